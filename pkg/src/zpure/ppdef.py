"""Positive-primitive formula calculus over Z/N.

A pp formula phi(x1..xk) = "exists y1..ym : A*x + B*y = 0" is stored by its
coefficient matrices.  Its solution set in a module M is a subgroup of M^k,
computed exactly: the defining system splits into one linear congruence
system per invariant factor of M, and each block is solved by a kernel
lattice.

Elements of M^k are flattened variable-major: coordinate (j, t) of variable
x_j at invariant t sits at index j * ngens(M) + t.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import InputError
from .finmod import (
    CanonicalModule,
    ModuleMap,
    Presentation,
    Subgroup,
    divisors,
    normalize_presentation,
)
from .zmodlin import IntMatrix, Vec, hermite_key, kernel_mod


@dataclass(frozen=True)
class PpFormula:
    free_count: int
    bound_count: int
    a: IntMatrix
    b: IntMatrix

    def __post_init__(self):
        if self.free_count < 1:
            raise InputError("pp formula needs at least one free variable")
        if self.a.rows != self.b.rows:
            raise InputError("coefficient matrices must have equal row counts")
        if self.a.cols != self.free_count or self.b.cols != self.bound_count:
            raise InputError("coefficient matrix shape mismatch")

    @property
    def rows(self) -> int:
        return self.a.rows

    def conjoin(self, other: "PpFormula") -> "PpFormula":
        """Conjunction; bound variables of the two conjuncts stay disjoint."""
        if other.free_count != self.free_count:
            raise InputError("conjunction of formulas with different free variables")
        a_rows = [list(r) for r in self.a.entries] + [list(r) for r in other.a.entries]
        b_rows = [list(r) + [0] * other.bound_count for r in self.b.entries]
        b_rows += [[0] * self.bound_count + list(r) for r in other.b.entries]
        return PpFormula(self.free_count, self.bound_count + other.bound_count,
                         IntMatrix.from_rows(a_rows, cols=self.free_count),
                         IntMatrix.from_rows(b_rows, cols=self.bound_count + other.bound_count))

    def __str__(self):
        return format_pp(self)


def trivial_formula(k: int = 1) -> PpFormula:
    """0*x = 0, satisfied by everything."""
    return PpFormula(k, 0, IntMatrix.zeros(1, k), IntMatrix.zeros(1, 0))


def divisibility_formula(d: int, modulus: int) -> PpFormula:
    """exists y : x = d*y, i.e. x - d*y = 0."""
    return PpFormula(1, 1, IntMatrix.from_rows([[1]]),
                     IntMatrix.from_rows([[(-d) % modulus]]))


def annihilator_formula(d: int) -> PpFormula:
    """d*x = 0."""
    return PpFormula(1, 0, IntMatrix.from_rows([[d]]), IntMatrix.zeros(1, 0))


@dataclass(frozen=True)
class PpPair:
    """A pp pair phi/psi with psi stored as psi & phi, so psi(M) <= phi(M)
    holds in every module by construction."""

    phi: PpFormula
    psi: PpFormula

    @classmethod
    @lru_cache(maxsize=None)
    def of(cls, phi: PpFormula, psi: PpFormula) -> "PpPair":
        return cls(phi, psi.conjoin(phi))


@lru_cache(maxsize=None)
def eval_pp(formula: PpFormula, module: CanonicalModule) -> Subgroup:
    """The subgroup {x in M^k : exists y, A*x + B*y = 0} by generators."""
    k, m = formula.free_count, formula.bound_count
    s = module.ngens
    orders = tuple(module.invariants) * k
    combined = formula.a.hstack(formula.b)
    gens = []
    for t in range(s):
        d = module.invariants[t]
        for sol in kernel_mod(combined, [d] * formula.rows):
            vec = [0] * (k * s)
            nontrivial = False
            for j in range(k):
                v = sol[j] % d
                if v:
                    vec[j * s + t] = v
                    nontrivial = True
            if nontrivial:
                gens.append(tuple(vec))
    return Subgroup(orders, module.modulus, tuple(gens))


@dataclass(frozen=True)
class SortGroup:
    """The quotient phi(M)/psi(M) in canonical form with projection data."""

    base: CanonicalModule
    module: CanonicalModule
    phi_subgroup: Subgroup
    pres: Presentation  # quotient presentation over the phi subgroup's generators

    def express(self, ambient_vector: Sequence[int]) -> Vec:
        """Sort-group coordinates of an element of phi(M) (a vector in M^k)."""
        c = self.phi_subgroup.coords(ambient_vector)
        return self.module.reduce(self.pres.project.apply(c))

    def generator_rep(self, i: int) -> Vec:
        """An element of phi(M) <= M^k mapping to the i-th canonical generator."""
        c = self.pres.lift.col(i)
        return self.phi_subgroup.element(c)


def sort_group_from_subgroups(phi_sub: Subgroup, psi_sub: Subgroup,
                              module: CanonicalModule) -> SortGroup:
    """Quotient of an evaluated phi subgroup by an evaluated psi subgroup."""
    phi_mod = phi_sub.module
    cols = [phi_sub.coords(g) for g in psi_sub.gens]
    cols += [tuple(d if i == j else 0 for i in range(phi_mod.ngens))
             for j, d in enumerate(phi_mod.invariants)]
    rel = IntMatrix(phi_mod.ngens, len(cols),
                    tuple(tuple(c[i] for c in cols) for i in range(phi_mod.ngens)))
    pres = normalize_presentation(rel, module.modulus)
    return SortGroup(module, pres.module, phi_sub, pres)


@lru_cache(maxsize=None)
def pp_pair_value(pair: PpPair, module: CanonicalModule) -> SortGroup:
    return sort_group_from_subgroups(eval_pp(pair.phi, module),
                                     eval_pp(pair.psi, module), module)


def induced_pp_map(pair: PpPair, f: ModuleMap,
                   source: Optional[SortGroup] = None,
                   target: Optional[SortGroup] = None) -> ModuleMap:
    """The functorial map phi(M)/psi(M) -> phi(M')/psi(M') induced by f.

    Well defined because homomorphisms preserve pp-definable subgroups.
    Precomputed sort groups can be passed to avoid recomputation.
    """
    src = source if source is not None else pp_pair_value(pair, f.domain)
    dst = target if target is not None else pp_pair_value(pair, f.codomain)
    k = pair.phi.free_count
    s_dom = f.domain.ngens
    s_cod = f.codomain.ngens
    cols = []
    for i in range(src.module.ngens):
        rep = src.generator_rep(i)
        image = [0] * (k * s_cod)
        for j in range(k):
            xj = rep[j * s_dom:(j + 1) * s_dom]
            yj = f.apply(xj)
            for t in range(s_cod):
                image[j * s_cod + t] = yj[t]
        cols.append(dst.express(image))
    mat = IntMatrix(dst.module.ngens, src.module.ngens,
                    tuple(tuple(cols[j][i] for j in range(src.module.ngens))
                          for i in range(dst.module.ngens)))
    return ModuleMap(src.module, dst.module, mat)


# ---------------------------------------------------------------------------
# Formula catalog


def _subgroup_elements(sub: Subgroup) -> frozenset:
    """Span of the generators, enumerated breadth-first (small ambients only)."""
    orders = sub.ambient_orders
    zero = tuple(0 for _ in orders)
    seen = {zero}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for g in sub.gens:
            nxt = tuple((c + v) % o for c, v, o in zip(cur, g, orders))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def _dedup_test_modules(modulus: int) -> list[CanonicalModule]:
    divs = [d for d in divisors(modulus) if d >= 2]
    mods = [CanonicalModule.cyclic(modulus, d) for d in divs]
    if divs:
        small = divs[0]
        mods.append(CanonicalModule(modulus, (small, modulus)))
    return mods


def _formula_signature(formula: PpFormula, test_modules) -> tuple:
    return tuple(_subgroup_elements(eval_pp(formula, m)) for m in test_modules)


def _reduce_mod_hnf(vec, hnf_rows):
    v = list(vec)
    w = len(v)
    for i in range(w):
        p = hnf_rows[i][i]
        q = v[i] // p
        if q:
            row = hnf_rows[i]
            for c in range(i, w):
                v[c] -= q * row[c]
    return tuple(v)


def _enumerate_row_spans(modulus: int, width: int, max_rows: int):
    """Representatives (as row lists) of all row-span lattices reachable with
    at most max_rows rows over Z/modulus, deduplicated by Hermite key."""
    from itertools import product

    zero_key = hermite_key([], modulus, width)
    seen = {zero_key}
    level: list[tuple[tuple, list]] = [(zero_key, [])]
    reps: list[list] = []
    all_rows = list(product(range(modulus), repeat=width))
    for _ in range(max_rows):
        nxt = []
        for key, rows in level:
            tried = set()
            for v in all_rows:
                red = _reduce_mod_hnf(v, key)
                if not any(red) or red in tried:
                    continue
                tried.add(red)
                new_rows = rows + [v]
                new_key = hermite_key(new_rows, modulus, width)
                if new_key in seen:
                    continue
                seen.add(new_key)
                nxt.append((new_key, new_rows))
                reps.append(new_rows)
        level = nxt
    return reps


@lru_cache(maxsize=None)
def enumerate_pp(modulus: int, free_vars: int = 1, max_bound: int = 2,
                 max_rows: int = 2) -> tuple[PpFormula, ...]:
    """Deterministic catalog of pp formulas within the stated bounds.

    The catalog always begins with the divisibility formulas (exists y,
    x = d*y; requires max_bound >= 1) and the annihilator formulas (d*x = 0)
    for every divisor d of the modulus, then appends every further formula
    reachable within the bounds.  Formulas are deduplicated by their
    evaluation on a fixed set of test modules; the first representative in
    enumeration order is kept.
    """
    if free_vars < 1 or max_bound < 0 or max_rows < 0:
        raise InputError("catalog bounds out of range")
    test_modules = tuple(_dedup_test_modules(modulus))
    catalog: list[PpFormula] = []
    seen_sigs = set()

    def offer(formula: PpFormula):
        sig = _formula_signature(formula, test_modules)
        if sig not in seen_sigs:
            seen_sigs.add(sig)
            catalog.append(formula)

    offer(trivial_formula(free_vars))
    if free_vars == 1:
        for d in divisors(modulus):
            if max_bound >= 1:
                offer(divisibility_formula(d, modulus))
        for d in divisors(modulus):
            offer(annihilator_formula(d))

    for m in range(0, max_bound + 1):
        width = free_vars + m
        for rows in _enumerate_row_spans(modulus, width, max_rows):
            a = IntMatrix.from_rows([r[:free_vars] for r in rows], cols=free_vars)
            b = IntMatrix.from_rows([r[free_vars:] for r in rows], cols=m)
            offer(PpFormula(free_vars, m, a, b))
    return tuple(catalog)


# ---------------------------------------------------------------------------
# Textual syntax: `E y1 y2 : 2x1 + 3y1 = 0 & y1 - y2 = 0`


_TERM_RE = re.compile(r"^([+-]?\d*)\s*([xy])(\d+)$")


def format_pp(formula: PpFormula) -> str:
    parts = []
    for r in range(formula.rows):
        terms = []
        for j in range(formula.free_count):
            c = formula.a.entries[r][j]
            if c:
                terms.append((c, f"x{j + 1}"))
        for l in range(formula.bound_count):
            c = formula.b.entries[r][l]
            if c:
                terms.append((c, f"y{l + 1}"))
        if not terms:
            parts.append("0 = 0")
            continue
        pieces = []
        for idx, (c, name) in enumerate(terms):
            mag = abs(c)
            body = name if mag == 1 else f"{mag}{name}"
            if idx == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        parts.append(" ".join(pieces) + " = 0")
    clause = " & ".join(parts)
    if formula.bound_count:
        ys = " ".join(f"y{i + 1}" for i in range(formula.bound_count))
        return f"E {ys} : {clause}"
    return clause


def parse_pp(text: str, free_vars: Optional[int] = None) -> PpFormula:
    """Parse the textual pp syntax; the inverse of format_pp."""
    text = text.strip()
    bound = 0
    if text.startswith("E "):
        head, _, rest = text.partition(":")
        names = head[1:].split()
        for nm in names:
            if not re.fullmatch(r"y\d+", nm):
                raise InputError(f"bad bound variable {nm!r}")
        bound = len(names)
        text = rest.strip()
    rows_a = []
    rows_b = []
    max_x = 0
    for clause in text.split("&"):
        lhs, _, rhs = clause.partition("=")
        if rhs.strip() != "0":
            raise InputError("pp clause must end in '= 0'")
        xs: dict[int, int] = {}
        ys: dict[int, int] = {}
        expr = lhs.replace("-", "+-").split("+")
        for raw in expr:
            raw = raw.strip()
            if not raw:
                continue
            if raw in ("0", "-0"):
                continue
            m = _TERM_RE.match(raw.replace(" ", ""))
            if not m:
                raise InputError(f"bad pp term {raw!r}")
            coef_s, kind, idx_s = m.groups()
            coef = int(coef_s) if coef_s not in ("", "+", "-") else (-1 if coef_s == "-" else 1)
            idx = int(idx_s) - 1
            if kind == "x":
                xs[idx] = xs.get(idx, 0) + coef
                max_x = max(max_x, idx + 1)
            else:
                if idx >= bound:
                    bound = idx + 1
                ys[idx] = ys.get(idx, 0) + coef
        rows_a.append(xs)
        rows_b.append(ys)
    k = free_vars if free_vars is not None else max(max_x, 1)
    a = IntMatrix.from_rows([[row.get(j, 0) for j in range(k)] for row in rows_a], cols=k)
    b = IntMatrix.from_rows([[row.get(l, 0) for l in range(bound)] for row in rows_b], cols=bound)
    return PpFormula(k, bound, a, b)
