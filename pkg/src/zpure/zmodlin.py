"""Exact integer and modular linear algebra.

Everything here works with arbitrary-precision Python integers; no rounding
can occur.  This module is the computational substrate for the rest of the
package: Smith normal form with unimodular transforms, solving linear
congruence systems with componentwise moduli, and kernel lattices.

Matrix convention (fixed package-wide): a matrix represents a map acting on
coordinate *columns*, rows are indexed by the codomain and columns by the
domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InputError

Vec = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b), g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with explicit dimensions.

    Dimensions are stored separately so that empty shapes (0 x n, n x 0)
    stay well defined.
    """

    rows: int
    cols: int
    entries: tuple[Vec, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InputError("negative matrix dimension")
        if len(self.entries) != self.rows:
            raise InputError("row count does not match entry grid")
        for row in self.entries:
            if len(row) != self.cols:
                raise InputError("ragged matrix entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        grid = tuple(tuple(int(v) for v in row) for row in rows)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        return cls(len(grid), cols, grid)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(n, n, tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))

    def tolists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def col(self, j: int) -> Vec:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list[Vec]:
        return [self.col(j) for j in range(self.cols)]

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise InputError("hstack: row mismatch")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(self.entries[i] + other.entries[i] for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InputError("matmul: dimension mismatch")
        ot = other.transpose().entries
        return IntMatrix(self.rows, other.cols,
                         tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
                               for row in self.entries))

    def apply(self, vector: Sequence[int]) -> Vec:
        if len(vector) != self.cols:
            raise InputError("apply: dimension mismatch")
        return tuple(sum(a * x for a, x in zip(row, vector)) for row in self.entries)

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.entries for v in row)

    def __repr__(self):
        return f"IntMatrix({self.tolists()!r})"


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form S = U * A * V with unimodular U, V.

    The diagonal of S is nonnegative and forms a divisibility chain
    s_1 | s_2 | ... ; ``u_inv`` is the exact inverse of U, tracked during
    the reduction so change-of-basis data never needs a separate inversion.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    u_inv: IntMatrix

    def diagonal(self) -> list[int]:
        return [self.S.entries[i][i] for i in range(min(self.S.rows, self.S.cols))]

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)


def _snf_core(S: list[list[int]], m: int, n: int,
              want_u: bool, want_uinv: bool, want_v: bool):
    """In-place Smith reduction with optional transform tracking.

    Classical Euclidean pivoting: repeatedly move a minimal nonzero entry to
    the pivot position, clear its row and column, and absorb any entry of the
    remaining block that the pivot does not divide.  This makes the diagonal
    a divisibility chain without a separate fix-up pass.
    """
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if want_u else None
    Uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if want_uinv else None
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if want_v else None

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if Uinv is not None:
            for r in range(m):  # inverse op acts on columns
                Uinv[r][i], Uinv[r][j] = Uinv[r][j], Uinv[r][i]

    def row_add(i, j, c):
        # row_i += c * row_j ; Uinv column j -= c * column i
        Si, Sj = S[i], S[j]
        for k in range(n):
            Si[k] += c * Sj[k]
        if U is not None:
            Ui, Uj = U[i], U[j]
            for k in range(m):
                Ui[k] += c * Uj[k]
        if Uinv is not None:
            for r in range(m):
                Uinv[r][j] -= c * Uinv[r][i]

    def row_negate(i):
        S[i] = [-v for v in S[i]]
        if U is not None:
            U[i] = [-v for v in U[i]]
        if Uinv is not None:
            for r in range(m):
                Uinv[r][i] = -Uinv[r][i]

    def col_swap(i, j):
        for r in range(m):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        if V is not None:
            for r in range(n):
                V[r][i], V[r][j] = V[r][j], V[r][i]

    def col_add(i, j, c):
        # col_i += c * col_j
        for r in range(m):
            S[r][i] += c * S[r][j]
        if V is not None:
            for r in range(n):
                V[r][i] += c * V[r][j]

    t = 0
    while t < min(m, n):
        piv = None
        best = None
        for i in range(t, m):
            Si = S[i]
            for j in range(t, n):
                v = Si[j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])

        while True:
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    if S[i][t]:
                        q = S[i][t] // S[t][t]
                        row_add(i, t, -q)
                        if S[i][t]:
                            row_swap(t, i)
                            dirty = True
                for j in range(t + 1, n):
                    if S[t][j]:
                        q = S[t][j] // S[t][t]
                        col_add(j, t, -q)
                        if S[t][j]:
                            col_swap(t, j)
                            dirty = True
            d = S[t][t]
            bad = None
            for i in range(t + 1, m):
                Si = S[i]
                for j in range(t + 1, n):
                    if Si[j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if S[t][t] < 0:
            row_negate(t)
        t += 1

    return U, Uinv, V


def smith_normal_form(A: IntMatrix) -> SnfResult:
    """Smith normal form with all transforms; see SnfResult for invariants."""
    m, n = A.rows, A.cols
    S = [list(row) for row in A.entries]
    U, Uinv, V = _snf_core(S, m, n, True, True, True)
    return SnfResult(
        U=IntMatrix.from_rows(U, cols=m),
        S=IntMatrix.from_rows(S, cols=n),
        V=IntMatrix.from_rows(V, cols=n),
        u_inv=IntMatrix.from_rows(Uinv, cols=m),
    )


def snf_diagonal_only(rows: Sequence[Sequence[int]], m: int, n: int) -> list[int]:
    """Just the invariant factors; no transform bookkeeping."""
    S = [list(r) for r in rows]
    _snf_core(S, m, n, False, False, False)
    return [S[i][i] for i in range(min(m, n))]


def snf_left_transforms(rows: Sequence[Sequence[int]], m: int, n: int):
    """(U, U_inverse, diagonal) with U*A*V = S; V is not tracked."""
    S = [list(r) for r in rows]
    U, Uinv, _ = _snf_core(S, m, n, True, True, False)
    return U, Uinv, [S[i][i] for i in range(min(m, n))]


def column_echelon(columns: Sequence[Sequence[int]], dim: int) -> list[Vec]:
    """Reduce a generating set of an integer column lattice in Z^dim.

    Returns a triangular generating set (at most ``dim`` columns) of the same
    lattice; no transform is tracked, so this is cheap preprocessing for
    presentations with many redundant relation columns.
    """
    basis: list[Optional[list[int]]] = [None] * dim
    for col in columns:
        vec = list(col)
        i = 0
        while i < dim:
            v = vec[i]
            if v == 0:
                i += 1
                continue
            b = basis[i]
            if b is None:
                basis[i] = vec
                break
            a = b[i]
            if v % a == 0:
                q = v // a
                for k in range(i, dim):
                    vec[k] -= q * b[k]
                i += 1
            else:
                x, y, g = xgcd(a, v)
                ag, vg = a // g, v // g
                for k in range(i, dim):
                    bk, vk = b[k], vec[k]
                    b[k] = x * bk + y * vk
                    vec[k] = -vg * bk + ag * vk
                i += 1
    return [tuple(b) for b in basis if b is not None]


def hermite_key(vectors: Sequence[Sequence[int]], modulus: int, dim: int) -> tuple:
    """Canonical key for the lattice spanned by ``vectors`` and modulus*Z^dim.

    Used to deduplicate row spans of formula matrices: two systems with the
    same key define the same solution sets in every module over Z/modulus.
    """
    rows = [list(v) for v in vectors]
    for i in range(dim):
        rows.append([modulus if j == i else 0 for j in range(dim)])
    # integer row HNF (upper triangular, positive pivots, reduced above)
    pivot_row = 0
    for j in range(dim):
        # combine all rows below pivot_row to leave one nonzero entry in col j
        k = pivot_row
        while True:
            nz = [i for i in range(pivot_row, len(rows)) if rows[i][j] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(rows[i][j]))
            i0 = nz[0]
            for i in nz[1:]:
                q = rows[i][j] // rows[i0][j]
                ri, r0 = rows[i], rows[i0]
                for c in range(j, dim):
                    ri[c] -= q * r0[c]
        nz = [i for i in range(pivot_row, len(rows)) if rows[i][j] != 0]
        if not nz:
            continue
        i0 = nz[0]
        rows[pivot_row], rows[i0] = rows[i0], rows[pivot_row]
        if rows[pivot_row][j] < 0:
            rows[pivot_row] = [-v for v in rows[pivot_row]]
        p = rows[pivot_row][j]
        for i in range(pivot_row):
            if rows[i][j]:
                q = rows[i][j] // p
                ri, rp = rows[i], rows[pivot_row]
                for c in range(j, dim):
                    ri[c] -= q * rp[c]
        pivot_row += 1
    return tuple(tuple(r) for r in rows[:pivot_row])


def _row_echelon_inplace(rows: list[list[int]], width: int) -> list[list[int]]:
    """Integer row reduction without transforms; kernel-preserving."""
    out: list[list[int]] = []
    work = [r for r in rows if any(r)]
    col = 0
    while work and col < width:
        nz = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not nz:
            work = rest
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            r0 = nz[0]
            new_nz = [r0]
            for r in nz[1:]:
                q = r[col] // r0[col]
                for c in range(col, width):
                    r[c] -= q * r0[c]
                if r[col]:
                    new_nz.append(r)
                elif any(r):
                    rest.append(r)
            nz = new_nz
        out.append(nz[0])
        work = rest
        col += 1
    return out


class ModSolver:
    """Factored form of the system A*x == b (mod moduli) for repeated solves.

    The augmented matrix [A | diag(moduli)] is Smith-reduced once; each
    ``particular`` call afterwards costs only two matrix-vector products.
    """

    __slots__ = ("k", "r", "diag", "rank", "U", "V")

    def __init__(self, rows: Sequence[Sequence[int]], k: int, moduli: Sequence[int]):
        r = len(moduli)
        for mm in moduli:
            if mm < 1:
                raise InputError("moduli must be >= 1")
        S = [list(rows[i]) + [moduli[i] if i == j else 0 for j in range(r)]
             for i in range(r)]
        U, _, V = _snf_core(S, r, k + r, True, False, True)
        self.k = k
        self.r = r
        self.U = U
        self.V = V
        self.diag = [S[i][i] for i in range(min(r, k + r))]
        self.rank = sum(1 for d in self.diag if d)

    def particular(self, b: Sequence[int]) -> Optional[list[int]]:
        """One solution x (length k) of A*x == b, or None."""
        k, r = self.k, self.r
        U = self.U
        w = [0] * (k + r)
        for i in range(r):
            ci = sum(U[i][j] * b[j] for j in range(r))
            s = self.diag[i] if i < len(self.diag) else 0
            if s == 0:
                if ci:
                    return None
            else:
                if ci % s:
                    return None
                w[i] = ci // s
        V = self.V
        return [sum(V[i][j] * w[j] for j in range(k + r) if w[j]) for i in range(k)]

    def kernel_gens(self) -> list[Vec]:
        """Generators of the homogeneous solution lattice in Z^k."""
        out = []
        for j in range(self.rank, self.k + self.r):
            col = tuple(self.V[i][j] for i in range(self.k))
            if any(col):
                out.append(col)
        return out


def solve_mod_many(A: IntMatrix, b: Sequence[int], moduli: Sequence[int]) -> Optional[tuple[Vec, list[Vec]]]:
    """Solve A*x == b componentwise mod ``moduli`` (one modulus per row).

    Returns (particular solution, generators of the homogeneous solution
    lattice in Z^cols) or None if no solution exists.  The homogeneous
    lattice always contains lcm(moduli)*Z^cols, so its generators also
    generate the solution subgroup after any further reduction.
    """
    r, k = A.rows, A.cols
    if len(b) != r or len(moduli) != r:
        raise InputError("solve_mod_many: dimension mismatch")
    solver = ModSolver(A.entries, k, moduli)
    part = solver.particular(b)
    if part is None:
        return None
    return tuple(part), solver.kernel_gens()


def kernel_mod(A: IntMatrix, target_moduli: Sequence[int]) -> list[Vec]:
    """Generators of {x in Z^cols : A*x == 0 componentwise mod target_moduli}.

    The returned vectors generate the full integer solution lattice, which
    contains lcm(target_moduli)*Z^cols; reducing them modulo any ambient
    modulus therefore yields generators of the solution subgroup there.
    """
    r, k = A.rows, A.cols
    if len(target_moduli) != r:
        raise InputError("kernel_mod: dimension mismatch")
    if k == 0:
        return []
    if r == 0:
        return [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
    for mm in target_moduli:
        if mm < 1:
            raise InputError("moduli must be >= 1")
    rows = []
    for i in range(r):
        if target_moduli[i] == 1:
            continue  # no condition
        rows.append(list(A.entries[i]) + [target_moduli[i] if i == j else 0 for j in range(r)])
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
    # row reduction keeps the kernel and shrinks the SNF input
    reduced = _row_echelon_inplace(rows, k + r)
    m = len(reduced)
    width = k + r
    _, _, V = _snf_core(reduced, m, width, False, False, True)
    rank = sum(1 for i in range(min(m, width)) if reduced[i][i])
    gens = []
    for j in range(rank, width):
        col = tuple(V[i][j] for i in range(k))
        if any(col):
            gens.append(col)
    return gens


def solve_linear_mod(A: IntMatrix, b: Sequence[int], modulus: int) -> Optional[tuple[Vec, list[Vec]]]:
    """Solve A*x == b (mod modulus); all rows share one modulus.

    Returns (particular, homogeneous generators), both reduced mod modulus,
    or None when the system has no solution.
    """
    if modulus < 1:
        raise InputError("modulus must be >= 1")
    if len(b) != A.rows:
        raise InputError("solve_linear_mod: dimension mismatch")
    res = solve_mod_many(A, b, [modulus] * A.rows)
    if res is None:
        return None
    part, hom = res
    part = tuple(v % modulus for v in part)
    hom_red = []
    seen = set()
    for h in hom:
        hr = tuple(v % modulus for v in h)
        if any(hr) and hr not in seen:
            seen.add(hr)
            hom_red.append(hr)
    return part, hom_red
