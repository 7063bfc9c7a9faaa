"""Six independent purity decision procedures and their consensus harness.

Each checker decides, by a different route, whether a short exact sequence of
finite Z/N-modules is pure:

  hom_lifting  every map from a cyclic module into the right term lifts
               through the middle (cyclic test objects suffice: every finite
               module is a sum of cyclics and surjectivity is componentwise)
  split        a section of the quotient map exists (over Z/N every finite
               module is pure-injective, so purity and splitness coincide;
               this checker doubles as the ground-truth oracle)
  fp_functors  the sequences induced by a catalog of finitely presented
               functors, realized as cokernels of maps of representables,
               stay exact
  pp_pairs     the sort-group sequences induced by a catalog of pp pairs
               stay exact
  tensor       tensoring with each cyclic module keeps the left map
               injective (right-exactness holds automatically; finitely
               generated test objects suffice, and over Z/N the same test
               also covers the dual conditions stated for the fp-injective
               and injective functor classes)
  dual_split   the character-dual sequence is split

All six conditions are equivalent for finite modules over Z/N, so the
checkers must always agree; a disagreement is treated as a bug in this
package, never as a mathematical discovery.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InternalCheckError, InputError
from .finmod import (
    CanonicalModule,
    ModuleMap,
    ShortSequence,
    Subgroup,
    divisors,
    dual_map,
    is_exact,
    random_ses,
    splitting_section,
    tensor_map,
)
from .funcat import eval_fp_functor, fp_induced
from .ppdef import (
    PpPair,
    enumerate_pp,
    eval_pp,
    format_pp,
    induced_pp_map,
    sort_group_from_subgroups,
)
from .zmodlin import IntMatrix

CHECKER_NAMES = ("hom_lifting", "split", "fp_functors", "pp_pairs", "tensor", "dual_split")


@dataclass(frozen=True)
class Bounds:
    """Catalog bounds for the two redundant checkers."""

    pp_free: int = 1
    pp_exists: int = 2
    pp_rows: int = 2
    fp_depth: int = 2

    def validate(self):
        if self.pp_free < 1 or self.pp_exists < 0 or self.pp_rows < 0 or self.fp_depth < 0:
            raise InputError("catalog bounds out of range")


DEFAULT_BOUNDS = Bounds()


# ---------------------------------------------------------------------------
# Individual checkers


def _torsion_subgroup(module: CanonicalModule, d: int) -> Subgroup:
    """The d-torsion {x : d*x == 0} as a subgroup."""
    scalar = ModuleMap(module, module, IntMatrix.diagonal([d] * module.ngens))
    return scalar.kernel()


def check_hom_lifting(seq: ShortSequence):
    """For every divisor d, maps Z/d -> right must lift through g.

    Hom(Z/d, X) is the d-torsion of X, so the condition is that g carries the
    d-torsion of the middle onto the d-torsion of the right term.  A failure
    witness is a d-torsion element of the right term outside the image,
    i.e. a homomorphism Z/d -> right with no lift.
    """
    for d in divisors(seq.modulus):
        if d == 1:
            continue
        tor_m = _torsion_subgroup(seq.middle, d)
        tor_n = _torsion_subgroup(seq.right, d)
        pushed = Subgroup(seq.right.invariants, seq.modulus,
                          tuple(seq.g.apply(x) for x in tor_m.gens))
        if pushed.cardinality == tor_n.cardinality:
            continue
        for y in tor_n.elements():
            if any(y) and not pushed.contains(y):
                return False, {"kind": "unliftable_hom", "cyclic": d, "target": list(y)}
        raise InternalCheckError("torsion image smaller but no witness found")
    return True, None


def check_split_oracle(seq: ShortSequence):
    s = splitting_section(seq)
    if s is None:
        return False, {"kind": "no_section"}
    return True, {"kind": "section", "matrix": s.matrix.tolists()}


def check_fp_functors(seq: ShortSequence, bounds: Bounds = DEFAULT_BOUNDS):
    """Exactness of every sequence induced by the bounded fp-functor catalog."""
    for u in fp_catalog(seq.modulus, bounds.fp_depth):
        f_ind = fp_induced(u, seq.f)
        g_ind = fp_induced(u, seq.g)
        if not is_exact(f_ind, g_ind):
            return False, {
                "kind": "fp_functor",
                "map_domain": list(u.domain.invariants),
                "map_codomain": list(u.codomain.invariants),
                "matrix": u.matrix.tolists(),
            }
    return True, None


def check_pp_pairs(seq: ShortSequence, bounds: Bounds = DEFAULT_BOUNDS):
    """Exactness of the sort-group sequence for every catalog pp pair."""
    catalog = enumerate_pp(seq.modulus, bounds.pp_free, bounds.pp_exists, bounds.pp_rows)
    mods = (seq.left, seq.middle, seq.right)
    phi_subs = {}

    def phi_sub(idx, which):
        key = (idx, which)
        if key not in phi_subs:
            phi_subs[key] = eval_pp(catalog[idx], mods[which])
        return phi_subs[key]

    for i, phi in enumerate(catalog):
        for j, psi in enumerate(catalog):
            pair = PpPair.of(phi, psi)
            psi_subs = [eval_pp(pair.psi, m) for m in mods]
            if all(psi_subs[w].cardinality == phi_sub(i, w).cardinality for w in range(3)):
                continue  # all three sort groups vanish; trivially exact
            sorts = [sort_group_from_subgroups(phi_sub(i, w), psi_subs[w], mods[w])
                     for w in range(3)]
            f_ind = induced_pp_map(pair, seq.f, sorts[0], sorts[1])
            g_ind = induced_pp_map(pair, seq.g, sorts[1], sorts[2])
            if not is_exact(f_ind, g_ind):
                return False, {"kind": "pp_pair",
                               "phi": format_pp(phi), "psi": format_pp(psi)}
    return True, None


def check_tensor(seq: ShortSequence):
    """Tensoring with Y must keep the left map injective; cyclic Y suffice."""
    for d in divisors(seq.modulus):
        if d == 1:
            continue
        y = CanonicalModule.cyclic(seq.modulus, d)
        induced = tensor_map(y, seq.f)
        if not induced.is_injective():
            return False, {"kind": "tensor", "cyclic": d}
    return True, None


def check_dual_split(seq: ShortSequence):
    """Split exactness of the character-dual sequence.

    The dual sequence failing plain exactness violates the injective
    cogenerator property and signals a bug, not an input condition.
    """
    f_dual = dual_map(seq.g)   # right* -> middle*
    g_dual = dual_map(seq.f)   # middle* -> left*
    if not is_exact(f_dual, g_dual):
        raise InternalCheckError("dual of an exact sequence failed exactness")
    dual_seq = ShortSequence.from_maps(f_dual, g_dual)
    if splitting_section(dual_seq) is None:
        return False, {"kind": "dual_not_split"}
    return True, None


# ---------------------------------------------------------------------------
# fp-functor catalog


def _modules_with_bounded_gens(modulus: int, depth: int) -> list[CanonicalModule]:
    chains: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [()]
    divs = [d for d in divisors(modulus) if d >= 2]
    for _ in range(depth):
        nxt = []
        for chain in frontier:
            lower = chain[-1] if chain else None
            for d in divs:
                if lower is None or d % lower == 0:
                    nxt.append(chain + (d,))
        chains.extend(nxt)
        frontier = nxt
    return [CanonicalModule(modulus, c) for c in chains]


_FP_CATALOGS: dict[tuple[int, int], tuple[ModuleMap, ...]] = {}


def fp_catalog(modulus: int, depth: int) -> tuple[ModuleMap, ...]:
    """Deterministic catalog of presentation maps u: b -> a, deduplicated by
    the invariants of the induced functor on cyclic test modules."""
    key = (modulus, depth)
    if key in _FP_CATALOGS:
        return _FP_CATALOGS[key]
    from .finmod import hom_module

    test = [CanonicalModule.cyclic(modulus, d) for d in divisors(modulus)]
    mods = _modules_with_bounded_gens(modulus, depth)
    catalog: list[ModuleMap] = []
    seen = set()
    for b in mods:
        for a in mods:
            h = hom_module(b, a)
            candidates = [ModuleMap.zero(b, a)]
            for i in range(h.module.ngens):
                candidates.append(h.to_map(h.module.generator(i)))
            if h.module.ngens > 1:
                candidates.append(h.to_map(tuple(1 for _ in range(h.module.ngens))))
            for u in candidates:
                sig = tuple(eval_fp_functor(u, c).invariants for c in test)
                if sig not in seen:
                    seen.add(sig)
                    catalog.append(u)
    result = tuple(catalog)
    _FP_CATALOGS[key] = result
    return result


# ---------------------------------------------------------------------------
# Consensus report


@dataclass(frozen=True)
class PurityReport:
    modulus: int
    bounds: Bounds
    verdicts: dict[str, bool]
    witnesses: dict[str, Optional[dict]]
    consensus: bool
    timings: dict[str, float] = field(compare=False)

    def is_pure(self) -> bool:
        return self.verdicts["split"]


def purity_report(seq: ShortSequence, bounds: Bounds = DEFAULT_BOUNDS) -> PurityReport:
    bounds.validate()
    checkers = (
        ("hom_lifting", lambda: check_hom_lifting(seq)),
        ("split", lambda: check_split_oracle(seq)),
        ("fp_functors", lambda: check_fp_functors(seq, bounds)),
        ("pp_pairs", lambda: check_pp_pairs(seq, bounds)),
        ("tensor", lambda: check_tensor(seq)),
        ("dual_split", lambda: check_dual_split(seq)),
    )
    verdicts: dict[str, bool] = {}
    witnesses: dict[str, Optional[dict]] = {}
    timings: dict[str, float] = {}
    for name, run in checkers:
        t0 = time.perf_counter()
        ok, wit = run()
        timings[name] = time.perf_counter() - t0
        verdicts[name] = ok
        witnesses[name] = None if ok else wit
    values = set(verdicts.values())
    return PurityReport(seq.modulus, bounds, verdicts, witnesses,
                        consensus=(len(values) == 1), timings=timings)


# ---------------------------------------------------------------------------
# Randomized equivalence harness


@dataclass(frozen=True)
class HarnessSummary:
    modulus: int
    trials: int
    seed: int
    bounds: Bounds
    pure_count: int
    disagreements: int
    disagreement_trials: tuple[int, ...]
    checker_false_counts: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "trials": self.trials,
            "seed": self.seed,
            "bounds": {
                "pp_free": self.bounds.pp_free,
                "pp_exists": self.bounds.pp_exists,
                "pp_rows": self.bounds.pp_rows,
                "fp_depth": self.bounds.fp_depth,
            },
            "pure_count": self.pure_count,
            "disagreements": self.disagreements,
            "disagreement_trials": list(self.disagreement_trials),
            "checker_false_counts": self.checker_false_counts,
        }


def _harness_trial(args) -> tuple[int, tuple[bool, ...], bool]:
    modulus, seed, index, bounds, max_gens = args
    seq = random_ses(modulus, seed=f"{seed}:{index}", max_gens=max_gens)
    report = purity_report(seq, bounds)
    return index, tuple(report.verdicts[name] for name in CHECKER_NAMES), report.consensus


def equivalence_harness(modulus: int, trials: int, seed: int,
                        bounds: Bounds = DEFAULT_BOUNDS, jobs: int = 1,
                        max_gens: int = 3) -> HarnessSummary:
    """Run the six checkers on seeded random exact sequences and count
    disagreements.  Deterministic for a given seed regardless of jobs."""
    if trials < 1:
        raise InputError("trials must be >= 1")
    if modulus < 2:
        raise InputError("modulus must be >= 2")
    bounds.validate()
    tasks = [(modulus, seed, i, bounds, max_gens) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_harness_trial, tasks,
                                    chunksize=max(1, trials // (4 * jobs))))
    else:
        results = [_harness_trial(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    pure = 0
    disagree: list[int] = []
    false_counts = {name: 0 for name in CHECKER_NAMES}
    for index, verdicts, consensus in results:
        if not consensus:
            disagree.append(index)
        if verdicts[CHECKER_NAMES.index("split")]:
            pure += 1
        for name, v in zip(CHECKER_NAMES, verdicts):
            if not v:
                false_counts[name] += 1
    return HarnessSummary(modulus, trials, seed, bounds, pure,
                          len(disagree), tuple(disagree), false_counts)
