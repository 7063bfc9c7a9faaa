"""Randomized verification suites for the functor-level isomorphisms.

Each suite draws seeded random inputs, runs an exact isomorphism check, and
reports pass/fail counts.  These back the `lemmas` CLI command and the
acceptance tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .finmod import direct_sum, hom_module, random_module
from .funcat import (
    build_index_category,
    dual_of_hom_check,
    hom_tensor_duality_check,
    kan_eval,
    nat_transformations,
    random_contra_functor,
    random_functor,
    tensor_functor,
    coend_evaluation_map,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: int
    total: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def suite_coend_evaluation(modulus: int, trials: int, seed) -> SuiteResult:
    """Evaluation map coend(D(-, Z/d), F) -> F(d) is an isomorphism."""
    cat = build_index_category(modulus)
    rng = random.Random(f"coendeval:{modulus}:{seed}")
    passed = total = 0
    failures = []
    for i in range(trials):
        F = random_functor(cat, rng)
        for d in cat.objects:
            total += 1
            _, ev = coend_evaluation_map(F, d)
            if ev.is_bijective():
                passed += 1
            else:
                failures.append(f"trial {i}, object {d}")
    return SuiteResult("coend_evaluation", passed, total, tuple(failures))


def suite_restriction(modulus: int, trials: int, seed) -> SuiteResult:
    """Extension restricted to D gives back F; extension is additive."""
    cat = build_index_category(modulus)
    rng = random.Random(f"restrict:{modulus}:{seed}")
    passed = total = 0
    failures = []
    for i in range(trials):
        F = random_functor(cat, rng)
        for d in cat.objects:
            total += 1
            if kan_eval(F, cat.cyclic(d)) == F.value(d):
                passed += 1
            else:
                failures.append(f"restriction: trial {i}, object {d}")
        c1 = random_module(modulus, rng, 2)
        c2 = random_module(modulus, rng, 2)
        total += 1
        lhs = kan_eval(F, direct_sum([c1, c2]).module)
        rhs = direct_sum([kan_eval(F, c1), kan_eval(F, c2)]).module
        if lhs == rhs:
            passed += 1
        else:
            failures.append(f"additivity: trial {i}")
    return SuiteResult("restriction", passed, total, tuple(failures))


def suite_hom_tensor(modulus: int, trials: int, seed) -> SuiteResult:
    """(G (x) F)* is Nat(F, G*) via the canonical map."""
    cat = build_index_category(modulus)
    rng = random.Random(f"homtensor:{modulus}:{seed}")
    passed = total = 0
    failures = []
    for i in range(trials):
        G = random_contra_functor(cat, rng)
        F = random_functor(cat, rng)
        total += 1
        if hom_tensor_duality_check(G, F):
            passed += 1
        else:
            failures.append(f"trial {i}")
    return SuiteResult("hom_tensor_duality", passed, total, tuple(failures))


def suite_dual_of_hom(modulus: int, trials: int, seed) -> SuiteResult:
    """Hom(-, X)* and X* (x) - agree objectwise on D."""
    cat = build_index_category(modulus)
    rng = random.Random(f"dualhom:{modulus}:{seed}")
    passed = total = 0
    failures = []
    for i in range(trials):
        x = random_module(modulus, rng, 2)
        total += 1
        if dual_of_hom_check(x, cat):
            passed += 1
        else:
            failures.append(f"trial {i}: {x}")
    return SuiteResult("dual_of_hom", passed, total, tuple(failures))


def suite_fully_faithful(modulus: int, trials: int, seed) -> SuiteResult:
    """Tensor-embedding checks: non-isomorphic Y give different functors, and
    Nat(Y (x) -, Y' (x) -) has exactly |Hom(Y, Y')| elements."""
    cat = build_index_category(modulus)
    rng = random.Random(f"faithful:{modulus}:{seed}")
    passed = total = 0
    failures = []
    for i in range(trials):
        y1 = random_module(modulus, rng, 2)
        y2 = random_module(modulus, rng, 2)
        t1 = tensor_functor(cat, y1)
        t2 = tensor_functor(cat, y2)
        total += 1
        # the value at the top object recovers Y itself
        if t1.value(modulus) == y1 and t2.value(modulus) == y2 and \
                ((y1 == y2) or (t1.value(modulus) != t2.value(modulus))):
            passed += 1
        else:
            failures.append(f"distinctness: trial {i}")
        total += 1
        nat = nat_transformations(t1, t2)
        if nat.module.cardinality == hom_module(y1, y2).module.cardinality:
            passed += 1
        else:
            failures.append(f"nat-count: trial {i}")
    return SuiteResult("fully_faithful", passed, total, tuple(failures))


def run_all_suites(modulus: int, trials: int, seed) -> list[SuiteResult]:
    return [
        suite_coend_evaluation(modulus, trials, seed),
        suite_restriction(modulus, trials, seed),
        suite_hom_tensor(modulus, trials, seed),
        suite_dual_of_hom(modulus, trials, seed),
        suite_fully_faithful(modulus, trials, seed),
    ]
