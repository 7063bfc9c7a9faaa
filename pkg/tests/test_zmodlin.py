import random
from itertools import product
from math import gcd

import pytest

from zpure.zmodlin import (
    IntMatrix,
    column_echelon,
    hermite_key,
    kernel_mod,
    smith_normal_form,
    solve_linear_mod,
    solve_mod_many,
)
from zpure.errors import InputError

from oracles import det_fraction, elementary_invariant_factors, enumerate_solutions, span_mod


def check_snf(A):
    res = smith_normal_form(A)
    assert (res.U @ A @ res.V).entries == res.S.entries
    assert (res.U @ res.u_inv).entries == IntMatrix.identity(A.rows).entries
    diag = res.diagonal()
    for i in range(len(diag) - 1):
        if diag[i + 1] != 0 or diag[i] != 0:
            assert diag[i] >= 0
            if diag[i] != 0:
                assert diag[i + 1] % diag[i] == 0
    # off-diagonal entries vanish
    for i in range(res.S.rows):
        for j in range(res.S.cols):
            if i != j:
                assert res.S.entries[i][j] == 0
    assert abs(det_fraction(res.U.tolists())) == 1
    assert abs(det_fraction(res.V.tolists())) == 1
    return res


def test_snf_worked_example():
    # invariant factors frozen from the minor-gcd oracle
    A = IntMatrix.from_rows([[2, 4], [0, 4]])
    assert elementary_invariant_factors([[2, 4], [0, 4]]) == [2, 4]
    res = check_snf(A)
    assert res.diagonal() == [2, 4]


def test_snf_identity():
    A = IntMatrix.identity(3)
    res = check_snf(A)
    assert res.diagonal() == [1, 1, 1]


def test_snf_zero():
    A = IntMatrix.from_rows([[0]])
    res = check_snf(A)
    assert res.diagonal() == [0]


def test_snf_empty_shapes():
    for rows, cols in [(0, 0), (0, 3), (3, 0)]:
        A = IntMatrix.zeros(rows, cols)
        res = check_snf(A)
        assert res.S.rows == rows and res.S.cols == cols


@pytest.mark.parametrize("seed", range(30))
def test_snf_random_matches_minor_gcd_oracle(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 4)
    n = rng.randint(1, 4)
    rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
    res = check_snf(IntMatrix.from_rows(rows, cols=n))
    expected = elementary_invariant_factors(rows)
    got = [d for d in res.diagonal() if d != 0]
    assert got == expected


def test_solve_linear_mod_worked_examples():
    # 2x = 2 (mod 4) -> {1, 3}
    sol = solve_linear_mod(IntMatrix.from_rows([[2]]), [2], 4)
    assert sol is not None
    part, hom = sol
    got = span_mod(hom, (4,))
    sols = {(part[0] + h[0]) % 4 for h in got}
    assert sols == {1, 3}
    # 0x = 0 (mod 4) -> everything
    sol = solve_linear_mod(IntMatrix.from_rows([[0]]), [0], 4)
    part, hom = sol
    assert {(part[0] + h[0]) % 4 for h in span_mod(hom, (4,))} == {0, 1, 2, 3}
    # 2x = 1 (mod 4) -> none
    assert solve_linear_mod(IntMatrix.from_rows([[2]]), [1], 4) is None


def test_kernel_mod_worked_examples():
    gens = kernel_mod(IntMatrix.from_rows([[2]]), [4])
    assert span_mod(gens, (4,)) == frozenset({(0,), (2,)})
    gens = kernel_mod(IntMatrix.from_rows([[0]]), [4])
    assert span_mod(gens, (4,)) == frozenset({(0,), (1,), (2,), (3,)})
    gens = kernel_mod(IntMatrix.from_rows([[1]]), [4])
    assert span_mod(gens, (4,)) == frozenset({(0,)})


def test_dimension_mismatch_rejected():
    with pytest.raises(InputError):
        solve_linear_mod(IntMatrix.from_rows([[1, 2]]), [1, 2], 4)
    with pytest.raises(InputError):
        kernel_mod(IntMatrix.from_rows([[1, 2]]), [4, 4])


@pytest.mark.parametrize("modulus", [2, 3, 4, 6, 16])
@pytest.mark.parametrize("seed", range(8))
def test_solve_against_enumeration(modulus, seed):
    rng = random.Random(f"{modulus}:{seed}")
    r = rng.randint(1, 3)
    k = rng.randint(1, 3)
    rows = [[rng.randrange(modulus) for _ in range(k)] for _ in range(r)]
    b = [rng.randrange(modulus) for _ in range(r)]
    A = IntMatrix.from_rows(rows, cols=k)
    expected = enumerate_solutions(rows, b, [modulus] * r, modulus)
    sol = solve_linear_mod(A, b, modulus)
    if sol is None:
        assert expected == set()
    else:
        part, hom = sol
        shifts = span_mod(hom, tuple([modulus] * k))
        got = {tuple((p + s) % modulus for p, s in zip(part, sh)) for sh in shifts}
        assert got == expected


@pytest.mark.parametrize("seed", range(10))
def test_kernel_with_mixed_moduli_against_enumeration(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 2)
    k = rng.randint(1, 3)
    moduli = [rng.choice([1, 2, 3, 4, 6]) for _ in range(r)]
    N = 12
    rows = [[rng.randrange(N) for _ in range(k)] for _ in range(r)]
    A = IntMatrix.from_rows(rows, cols=k)
    gens = kernel_mod(A, moduli)
    got = span_mod(gens, tuple([N] * k))
    expected = enumerate_solutions(rows, [0] * r, moduli, N)
    assert got == frozenset(expected)


def test_solve_mod_many_componentwise():
    # x = 0 mod 2 and x = 1 mod 3 -> x in {3, 9} mod 12... enumerate to be sure
    A = IntMatrix.from_rows([[1], [1]])
    res = solve_mod_many(A, [0, 1], [2, 3])
    assert res is not None
    part, hom = res
    got = {(part[0] + s[0]) % 6 for s in span_mod(hom, (6,))}
    expected = {x for x in range(6) if x % 2 == 0 and x % 3 == 1}
    assert got == expected


def test_column_echelon_preserves_lattice():
    rng = random.Random(7)
    for _ in range(20):
        dim = rng.randint(1, 3)
        cols = [[rng.randint(-6, 6) for _ in range(dim)] for _ in range(rng.randint(0, 6))]
        reduced = column_echelon(cols, dim)
        # lattices agree iff their spans mod 16 agree together with divisibility
        M = 16
        before = span_mod([tuple(c) for c in cols], tuple([M] * dim))
        after = span_mod(list(reduced), tuple([M] * dim))
        assert before == after


def test_hermite_key_is_lattice_invariant():
    N = 6
    # same row span written two ways
    k1 = hermite_key([(2, 0), (0, 3)], N, 2)
    k2 = hermite_key([(2, 3), (2, 0), (4, 3)], N, 2)
    assert k1 == k2
    k3 = hermite_key([(1, 0)], N, 2)
    assert k3 != k1


@pytest.mark.parametrize("modulus", [2, 3, 4])
def test_exhaustive_tiny_systems(modulus):
    # every 1x1 and 1x2 system over small moduli against full enumeration
    for a in range(modulus):
        for b in range(modulus):
            sol = solve_linear_mod(IntMatrix.from_rows([[a]]), [b], modulus)
            expected = enumerate_solutions([[a]], [b], [modulus], modulus)
            if sol is None:
                assert expected == set()
            else:
                part, hom = sol
                got = {(part[0] + s[0]) % modulus for s in span_mod(hom, (modulus,))}
                assert got == {e[0] for e in expected}
    for a, b, c in product(range(modulus), repeat=3):
        gens = kernel_mod(IntMatrix.from_rows([[a, b]]), [modulus])
        got = span_mod(gens, (modulus, modulus))
        expected = enumerate_solutions([[a, b]], [0], [modulus], modulus)
        assert got == frozenset(expected), (a, b, c)
