"""Finite modules over Z/N and their arithmetic.

A finite Z/N-module is stored in invariant-factor form: a divisibility chain
(d_1 | d_2 | ... | d_k | N) with every d_i >= 2, the empty chain being the
zero module.  Because the form is canonical, two modules are isomorphic
exactly when they are equal, so isomorphism testing is equality testing.

Homomorphisms are integer matrices acting on coordinate columns: rows are
indexed by codomain generators, columns by domain generators, and the j-th
domain generator is sent to sum_i a_ij * u_i.  This convention is global to
the package and to the CLI file formats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, prod
from typing import Iterator, Optional, Sequence

from .errors import InputError, InternalCheckError
from .zmodlin import (
    IntMatrix,
    ModSolver,
    Vec,
    column_echelon,
    kernel_mod,
    snf_diagonal_only,
    snf_left_transforms,
    solve_mod_many,
)


@dataclass(frozen=True)
class CanonicalModule:
    modulus: int
    invariants: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise InputError("modulus must be >= 1")
        prev = None
        for d in self.invariants:
            if d < 2:
                raise InputError("invariant factors must be >= 2")
            if prev is not None and d % prev:
                raise InputError("invariant factors must form a divisibility chain")
            prev = d
        if self.invariants and self.modulus % self.invariants[-1]:
            raise InputError("invariant factors must divide the modulus")

    @classmethod
    def zero(cls, modulus: int) -> "CanonicalModule":
        return cls(modulus, ())

    @classmethod
    def cyclic(cls, modulus: int, d: int) -> "CanonicalModule":
        if d == 1:
            return cls(modulus, ())
        return cls(modulus, (d,))

    @property
    def ngens(self) -> int:
        return len(self.invariants)

    @property
    def cardinality(self) -> int:
        return prod(self.invariants)

    def is_zero(self) -> bool:
        return not self.invariants

    def reduce(self, vector: Sequence[int]) -> Vec:
        if len(vector) != self.ngens:
            raise InputError("element has wrong length")
        return tuple(v % d for v, d in zip(vector, self.invariants))

    def zero_element(self) -> Vec:
        return (0,) * self.ngens

    def add(self, x: Sequence[int], y: Sequence[int]) -> Vec:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariants))

    def neg(self, x: Sequence[int]) -> Vec:
        return tuple((-a) % d for a, d in zip(x, self.invariants))

    def smul(self, c: int, x: Sequence[int]) -> Vec:
        return tuple((c * a) % d for a, d in zip(x, self.invariants))

    def elements(self) -> Iterator[Vec]:
        return product(*[range(d) for d in self.invariants])

    def generator(self, j: int) -> Vec:
        return tuple(1 if i == j else 0 for i in range(self.ngens))

    def __str__(self):
        if not self.invariants:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariants)


@dataclass(frozen=True)
class Presentation:
    """A module presented as coordinates mod ``orders`` divided by relations.

    ``project`` maps ambient coordinate columns onto canonical coordinates;
    ``lift`` is an exact integer section: project @ lift == identity.
    """

    module: CanonicalModule
    project: IntMatrix
    lift: IntMatrix


def normalize_presentation(relations: IntMatrix, modulus: int) -> Presentation:
    """Canonical form of Z^rows / (column lattice of relations + modulus*Z^rows).

    The cokernel is computed over Z/modulus, i.e. the columns of
    ``modulus * I`` are always implied relations.
    """
    if modulus < 1:
        raise InputError("modulus must be >= 1")
    g = relations.rows
    if g == 0:
        return Presentation(CanonicalModule.zero(modulus),
                            IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0))
    cols = relations.columns()
    cols.extend(tuple(modulus if i == j else 0 for i in range(g)) for j in range(g))
    reduced = column_echelon(cols, g)
    rel_rows = [[c[i] for c in reduced] for i in range(g)]
    U, Uinv, diag = snf_left_transforms(rel_rows, g, len(reduced))
    keep = []
    invariants = []
    for i in range(g):
        s = diag[i] if i < len(diag) else 0
        if s == 0 or modulus % s:
            raise InternalCheckError("presentation invariant factor does not divide modulus")
        if s > 1:
            keep.append(i)
            invariants.append(s)
    module = CanonicalModule(modulus, tuple(invariants))
    project = IntMatrix(len(keep), g, tuple(tuple(U[i]) for i in keep))
    lift = IntMatrix(g, len(keep),
                     tuple(tuple(Uinv[r][i] % modulus for i in keep) for r in range(g)))
    return Presentation(module, project, lift)


def canonical_from_cyclic_orders(orders: Sequence[int], modulus: int) -> Presentation:
    """Canonical form of a direct sum of cyclic groups Z/order (orders | modulus)."""
    return normalize_presentation(IntMatrix.diagonal(list(orders)), modulus)


@dataclass(frozen=True)
class ModuleMap:
    domain: CanonicalModule
    codomain: CanonicalModule
    matrix: IntMatrix

    def __post_init__(self):
        if self.domain.modulus != self.codomain.modulus:
            raise InputError("module map across different moduli")
        if self.matrix.rows != self.codomain.ngens or self.matrix.cols != self.domain.ngens:
            raise InputError("module map matrix has wrong shape")
        normalized = tuple(
            tuple(v % e for v in row)
            for row, e in zip(self.matrix.entries, self.codomain.invariants)
        )
        for j, d in enumerate(self.domain.invariants):
            for i, e in enumerate(self.codomain.invariants):
                if (d * normalized[i][j]) % e:
                    raise InputError(
                        f"ill-defined map: generator of order {d} sent to element "
                        f"not killed by {d} (entry {normalized[i][j]} mod {e})")
        object.__setattr__(self, "matrix",
                           IntMatrix(self.matrix.rows, self.matrix.cols, normalized))

    @classmethod
    def from_rows(cls, domain: CanonicalModule, codomain: CanonicalModule,
                  rows: Sequence[Sequence[int]]) -> "ModuleMap":
        return cls(domain, codomain, IntMatrix.from_rows(rows, cols=domain.ngens))

    @classmethod
    def identity(cls, module: CanonicalModule) -> "ModuleMap":
        return cls(module, module, IntMatrix.identity(module.ngens))

    @classmethod
    def zero(cls, domain: CanonicalModule, codomain: CanonicalModule) -> "ModuleMap":
        return cls(domain, codomain, IntMatrix.zeros(codomain.ngens, domain.ngens))

    def apply(self, x: Sequence[int]) -> Vec:
        return self.codomain.reduce(self.matrix.apply(self.domain.reduce(x)))

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition: (f @ g)(x) == f(g(x))."""
        if other.codomain != self.domain:
            raise InputError("composition type mismatch")
        return ModuleMap(other.domain, self.codomain, self.matrix @ other.matrix)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        if other.domain != self.domain or other.codomain != self.codomain:
            raise InputError("sum of maps with different types")
        return ModuleMap(self.domain, self.codomain,
                         IntMatrix(self.matrix.rows, self.matrix.cols,
                                   tuple(tuple(a + b for a, b in zip(r1, r2))
                                         for r1, r2 in zip(self.matrix.entries, other.matrix.entries))))

    def __neg__(self) -> "ModuleMap":
        return self.scale(-1)

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.domain, self.codomain,
                         IntMatrix(self.matrix.rows, self.matrix.cols,
                                   tuple(tuple(c * v for v in row) for row in self.matrix.entries)))

    def is_zero_map(self) -> bool:
        return self.matrix.is_zero()

    def image(self) -> "Subgroup":
        return Subgroup(self.codomain.invariants, self.codomain.modulus,
                        tuple(self.matrix.col(j) for j in range(self.matrix.cols)))

    def kernel(self) -> "Subgroup":
        gens = kernel_mod(self.matrix, self.codomain.invariants)
        return Subgroup(self.domain.invariants, self.domain.modulus,
                        tuple(self.domain.reduce(g) for g in gens))

    def is_injective(self) -> bool:
        return self.image().cardinality == self.domain.cardinality

    def is_surjective(self) -> bool:
        return self.image().cardinality == self.codomain.cardinality

    def is_bijective(self) -> bool:
        return (self.domain.cardinality == self.codomain.cardinality
                and self.is_surjective())

    def inverse(self) -> "ModuleMap":
        if not self.is_bijective():
            raise InputError("inverse of a non-bijective map")
        cols = []
        for i in range(self.codomain.ngens):
            target = self.codomain.generator(i)
            sol = solve_mod_many(self.matrix, target, self.codomain.invariants)
            if sol is None:
                raise InternalCheckError("bijective map with unsolvable generator")
            cols.append(self.domain.reduce(sol[0]))
        mat = IntMatrix(self.domain.ngens, self.codomain.ngens,
                        tuple(tuple(cols[j][i] for j in range(self.codomain.ngens))
                              for i in range(self.domain.ngens)))
        inv = ModuleMap(self.codomain, self.domain, mat)
        if (inv @ self) != ModuleMap.identity(self.domain):
            raise InternalCheckError("inverse verification failed")
        return inv

    def cokernel(self) -> tuple[CanonicalModule, "ModuleMap", IntMatrix]:
        """Quotient of the codomain by the image: (module, projection, section)."""
        return quotient_by_subgroup(self.codomain, self.image())


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a product of cyclic groups, given by generators.

    ``ambient_orders`` lists the order of each coordinate (each dividing the
    modulus); the ambient need not be in canonical chain form.
    """

    ambient_orders: tuple[int, ...]
    modulus: int
    gens: tuple[Vec, ...]

    def __post_init__(self):
        reduced = tuple(tuple(v % o for v, o in zip(g, self.ambient_orders)) for g in self.gens)
        for g in reduced:
            if len(g) != len(self.ambient_orders):
                raise InputError("subgroup generator has wrong length")
        object.__setattr__(self, "gens", tuple(g for g in reduced if any(g)))

    @cached_property
    def _gen_matrix(self) -> IntMatrix:
        n = len(self.ambient_orders)
        r = len(self.gens)
        return IntMatrix(n, r, tuple(tuple(self.gens[t][i] for t in range(r)) for i in range(n)))

    @cached_property
    def _solver(self) -> ModSolver:
        return ModSolver(self._gen_matrix.entries, len(self.gens), self.ambient_orders)

    @cached_property
    def presentation(self) -> Presentation:
        r = len(self.gens)
        if r == 0:
            return Presentation(CanonicalModule.zero(self.modulus),
                                IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0))
        relations = self._solver.kernel_gens()
        rel = IntMatrix(r, len(relations),
                        tuple(tuple(c[i] for c in relations) for i in range(r)))
        return normalize_presentation(rel, self.modulus)

    @property
    def module(self) -> CanonicalModule:
        return self.presentation.module

    @cached_property
    def cardinality(self) -> int:
        # |H| = |ambient| / |ambient / H|, one transform-free reduction
        n = len(self.ambient_orders)
        if not self.gens:
            return 1
        rows = [list(g_col) for g_col in self._gen_matrix.entries]
        for i in range(n):
            rows[i].extend(self.ambient_orders[i] if i == j else 0 for j in range(n))
        diag = snf_diagonal_only(rows, n, len(self.gens) + n)
        quotient = prod(d for d in diag if d)
        total = prod(self.ambient_orders)
        if quotient == 0 or total % quotient:
            raise InternalCheckError("subgroup index does not divide the ambient order")
        return total // quotient

    def contains(self, x: Sequence[int]) -> bool:
        if len(self.gens) == 0:
            return all(v % o == 0 for v, o in zip(x, self.ambient_orders))
        return self._solver.particular(x) is not None

    def coords(self, x: Sequence[int]) -> Vec:
        """Coordinates of x in the canonical form of the subgroup."""
        if len(self.gens) == 0:
            if not self.contains(x):
                raise InputError("element not in subgroup")
            return ()
        sol = self._solver.particular(x)
        if sol is None:
            raise InputError("element not in subgroup")
        return self.module.reduce(self.presentation.project.apply(sol))

    def element(self, coords: Sequence[int]) -> Vec:
        """Ambient vector realizing canonical coordinates."""
        if not self.gens:
            return tuple(0 for _ in self.ambient_orders)
        c = self.presentation.lift.apply(coords)
        vec = self._gen_matrix.apply(c)
        return tuple(v % o for v, o in zip(vec, self.ambient_orders))

    def elements(self) -> Iterator[Vec]:
        for c in self.module.elements():
            yield self.element(c)

    def inclusion_into(self, ambient: CanonicalModule) -> ModuleMap:
        if ambient.invariants != self.ambient_orders:
            raise InputError("ambient module does not match subgroup coordinates")
        q = self.module.ngens
        cols = [self.element(self.module.generator(i)) for i in range(q)]
        mat = IntMatrix(ambient.ngens, q,
                        tuple(tuple(cols[j][i] for j in range(q)) for i in range(ambient.ngens)))
        return ModuleMap(self.module, ambient, mat)


def quotient_by_subgroup(ambient: CanonicalModule,
                         sub: Subgroup) -> tuple[CanonicalModule, ModuleMap, IntMatrix]:
    """Quotient ambient/sub: (module, projection map, integer section of it)."""
    if sub.ambient_orders != ambient.invariants:
        raise InputError("subgroup does not live in the given ambient module")
    n = ambient.ngens
    cols = list(sub.gens) + [tuple(d if i == j else 0 for i in range(n))
                             for j, d in enumerate(ambient.invariants)]
    rel = IntMatrix(n, len(cols), tuple(tuple(c[i] for c in cols) for i in range(n)))
    pres = normalize_presentation(rel, ambient.modulus)
    proj = ModuleMap(ambient, pres.module, pres.project)
    return pres.module, proj, pres.lift


# ---------------------------------------------------------------------------
# Hom groups


@dataclass(frozen=True)
class HomModule:
    """Hom(source, target) as a canonical module plus realization data.

    Internally the group is a product of cyclic pieces, one per pair of
    generators: the (i, j) coordinate has order gcd(d_j, e_i) and value c
    stands for the matrix entry c * (e_i / gcd(d_j, e_i)).
    """

    source: CanonicalModule
    target: CanonicalModule
    module: CanonicalModule
    orders: tuple[int, ...]
    pres: Presentation

    def _coord_index(self, i: int, j: int) -> int:
        return i * self.source.ngens + j

    def to_map(self, element: Sequence[int]) -> ModuleMap:
        coords = self.pres.lift.apply(element)
        k, n = self.source.ngens, self.target.ngens
        rows = []
        for i in range(n):
            e = self.target.invariants[i]
            row = []
            for j in range(k):
                g = self.orders[self._coord_index(i, j)]
                row.append((coords[self._coord_index(i, j)] % g) * (e // g))
            rows.append(tuple(row))
        return ModuleMap(self.source, self.target, IntMatrix(n, k, tuple(rows)))

    def from_map(self, f: ModuleMap) -> Vec:
        if f.domain != self.source or f.codomain != self.target:
            raise InputError("map does not belong to this hom group")
        coords = []
        for i in range(self.target.ngens):
            e = self.target.invariants[i]
            for j in range(self.source.ngens):
                g = self.orders[self._coord_index(i, j)]
                step = e // g
                a = f.matrix.entries[i][j]
                if a % step:
                    raise InternalCheckError("hom entry outside the cyclic carrier")
                coords.append((a // step) % g)
        return self.module.reduce(self.pres.project.apply(coords))

    def maps(self) -> Iterator[ModuleMap]:
        for el in self.module.elements():
            yield self.to_map(el)


@lru_cache(maxsize=None)
def hom_module(source: CanonicalModule, target: CanonicalModule) -> HomModule:
    """The group of homomorphisms source -> target as a canonical module."""
    if source.modulus != target.modulus:
        raise InputError("hom across different moduli")
    orders = tuple(gcd(d, e) for e in target.invariants for d in source.invariants)
    pres = canonical_from_cyclic_orders(orders, source.modulus)
    return HomModule(source, target, pres.module, orders, pres)


# ---------------------------------------------------------------------------
# Tensor products


@dataclass(frozen=True)
class TensorModule:
    """left tensor right as a canonical module plus the pure-tensor map.

    Coordinate (p, j) has order gcd(c_p, d_j) and carries the pure tensor of
    the p-th left generator with the j-th right generator.
    """

    left: CanonicalModule
    right: CanonicalModule
    module: CanonicalModule
    orders: tuple[int, ...]
    pres: Presentation

    def _coord_index(self, p: int, j: int) -> int:
        return p * self.right.ngens + j

    def pure(self, y: Sequence[int], m: Sequence[int]) -> Vec:
        y = self.left.reduce(y)
        m = self.right.reduce(m)
        coords = [0] * len(self.orders)
        for p in range(self.left.ngens):
            for j in range(self.right.ngens):
                idx = self._coord_index(p, j)
                coords[idx] = (y[p] * m[j]) % self.orders[idx]
        return self.module.reduce(self.pres.project.apply(coords))


@lru_cache(maxsize=None)
def tensor_modules(left: CanonicalModule, right: CanonicalModule) -> TensorModule:
    if left.modulus != right.modulus:
        raise InputError("tensor across different moduli")
    orders = tuple(gcd(c, d) for c in left.invariants for d in right.invariants)
    pres = canonical_from_cyclic_orders(orders, left.modulus)
    return TensorModule(left, right, pres.module, orders, pres)


def tensor_pair_map(fl: ModuleMap, fr: ModuleMap) -> ModuleMap:
    """The induced map fl (x) fr between canonical tensor modules."""
    src = tensor_modules(fl.domain, fr.domain)
    dst = tensor_modules(fl.codomain, fr.codomain)
    rows_out = len(dst.orders)
    cols_in = len(src.orders)
    coord = [[0] * cols_in for _ in range(rows_out)]
    for p in range(fl.domain.ngens):
        for j in range(fr.domain.ngens):
            cin = src._coord_index(p, j)
            for i in range(fl.codomain.ngens):
                a = fl.matrix.entries[i][p]
                if not a:
                    continue
                for l in range(fr.codomain.ngens):
                    coord[dst._coord_index(i, l)][cin] = a * fr.matrix.entries[l][j]
    mat = IntMatrix.from_rows(coord, cols=cols_in)
    final = dst.pres.project @ mat @ src.pres.lift
    return ModuleMap(src.module, dst.module, final)


def tensor_map(left: CanonicalModule, f: ModuleMap) -> ModuleMap:
    """The induced map id_left (x) f between canonical tensor modules."""
    return tensor_pair_map(ModuleMap.identity(left), f)


# ---------------------------------------------------------------------------
# Character duals


@dataclass(frozen=True)
class DualModule:
    """Characters of a finite module with values in the N-torsion of Q/Z.

    For a module annihilated by N every character lands in (1/N)Z/Z, which we
    represent by its numerator in Z/N.  The pairing of chi = (chi_j) with
    m = (m_j) is sum_j chi_j * m_j * (N / d_j) mod N; it is bilinear and
    nondegenerate, and |M*| = |M|.
    """

    original: CanonicalModule
    module: CanonicalModule

    def pair(self, chi: Sequence[int], m: Sequence[int]) -> int:
        N = self.original.modulus
        total = 0
        for c, v, d in zip(chi, m, self.original.invariants):
            total += c * v * (N // d)
        return total % N


@lru_cache(maxsize=None)
def dual_module(module: CanonicalModule) -> DualModule:
    return DualModule(module, CanonicalModule(module.modulus, module.invariants))


def dual_map(f: ModuleMap) -> ModuleMap:
    """Contravariant dual: precomposition with f on characters."""
    dom = dual_module(f.codomain).module
    cod = dual_module(f.domain).module
    d_inv = f.domain.invariants
    e_inv = f.codomain.invariants
    rows = []
    for j in range(f.domain.ngens):
        row = []
        for i in range(f.codomain.ngens):
            num = f.matrix.entries[i][j] * d_inv[j]
            if num % e_inv[i]:
                raise InternalCheckError("dual entry not integral; map was ill-defined")
            row.append((num // e_inv[i]) % d_inv[j])
        rows.append(tuple(row))
    return ModuleMap(dom, cod, IntMatrix(f.domain.ngens, f.codomain.ngens, tuple(rows)))


def evaluation_map(module: CanonicalModule) -> ModuleMap:
    """The canonical map M -> M** computed through the pairing."""
    d1 = dual_module(module)
    d2 = dual_module(d1.module)
    N = module.modulus
    cols = []
    for j in range(module.ngens):
        gen = module.generator(j)
        coords = []
        for p in range(d1.module.ngens):
            chi = d1.module.generator(p)
            w = d1.pair(chi, gen)
            step = N // d2.original.invariants[p]
            if w % step:
                raise InternalCheckError("evaluation character not in torsion carrier")
            coords.append((w // step) % d2.original.invariants[p])
        cols.append(coords)
    mat = IntMatrix(d2.module.ngens, module.ngens,
                    tuple(tuple(cols[j][i] for j in range(module.ngens))
                          for i in range(d2.module.ngens)))
    return ModuleMap(module, d2.module, mat)


# ---------------------------------------------------------------------------
# Short exact sequences


def exactness_failure(f: ModuleMap, g: ModuleMap) -> Optional[str]:
    """Why 0 -> dom f -> dom g -> cod g -> 0 fails to be exact, or None."""
    if f.codomain != g.domain:
        return "maps are not composable"
    if not (g @ f).is_zero_map():
        return "composite g o f is nonzero"
    if not f.is_injective():
        return "f is not injective"
    if not g.is_surjective():
        return "g is not surjective"
    if f.domain.cardinality * g.codomain.cardinality != f.codomain.cardinality:
        return "image of f is smaller than kernel of g"
    return None


def is_exact(f: ModuleMap, g: ModuleMap) -> bool:
    return exactness_failure(f, g) is None


@dataclass(frozen=True)
class ShortSequence:
    """A validated short exact sequence 0 -> left -> middle -> right -> 0."""

    left: CanonicalModule
    middle: CanonicalModule
    right: CanonicalModule
    f: ModuleMap
    g: ModuleMap

    def __post_init__(self):
        if (self.f.domain != self.left or self.f.codomain != self.middle
                or self.g.domain != self.middle or self.g.codomain != self.right):
            raise InputError("sequence maps do not match the stated modules")
        reason = exactness_failure(self.f, self.g)
        if reason is not None:
            raise InputError(f"not a short exact sequence: {reason}")

    @classmethod
    def from_maps(cls, f: ModuleMap, g: ModuleMap) -> "ShortSequence":
        return cls(f.domain, f.codomain, g.codomain, f, g)

    @property
    def modulus(self) -> int:
        return self.middle.modulus


def splitting_section(seq: ShortSequence) -> Optional[ModuleMap]:
    """A section s with g o s == id, or None when no section exists."""
    m_inv = seq.middle.invariants
    n_inv = seq.right.invariants
    n_m, n_n = len(m_inv), len(n_inv)
    if n_n == 0:
        return ModuleMap.zero(seq.right, seq.middle)
    # unknowns: cyclic hom coordinates c_(i,j) of s, entry a_ij = c_ij*(m_i/gcd)
    unknowns = [(i, j) for i in range(n_m) for j in range(n_n)]
    steps = {(i, j): m_inv[i] // gcd(m_inv[i], n_inv[j]) for i, j in unknowns}
    rows = []
    rhs = []
    moduli = []
    G = seq.g.matrix
    for k in range(n_n):
        for j in range(n_n):
            row = []
            for (i, jj) in unknowns:
                row.append(G.entries[k][i] * steps[(i, jj)] if jj == j else 0)
            rows.append(row)
            rhs.append(1 if k == j else 0)
            moduli.append(n_inv[k])
    system = IntMatrix.from_rows(rows, cols=len(unknowns))
    sol = solve_mod_many(system, rhs, moduli)
    if sol is None:
        return None
    c = sol[0]
    mat_rows = [[0] * n_n for _ in range(n_m)]
    for idx, (i, j) in enumerate(unknowns):
        mat_rows[i][j] = c[idx] * steps[(i, j)]
    s = ModuleMap(seq.right, seq.middle, IntMatrix.from_rows(mat_rows, cols=n_n))
    if (seq.g @ s) != ModuleMap.identity(seq.right):
        raise InternalCheckError("section verification failed")
    return s


def is_split(seq: ShortSequence) -> bool:
    return splitting_section(seq) is not None


# ---------------------------------------------------------------------------
# Direct sums


@dataclass(frozen=True)
class DirectSum:
    module: CanonicalModule
    inclusions: tuple[ModuleMap, ...]
    projections: tuple[ModuleMap, ...]


def direct_sum(parts: Sequence[CanonicalModule]) -> DirectSum:
    if not parts:
        raise InputError("direct sum of no modules")
    modulus = parts[0].modulus
    for p in parts:
        if p.modulus != modulus:
            raise InputError("direct sum across different moduli")
    orders = [d for p in parts for d in p.invariants]
    pres = canonical_from_cyclic_orders(orders, modulus)
    total = pres.module
    n = len(orders)
    incls = []
    projs = []
    offset = 0
    for p in parts:
        k = p.ngens
        inc_mat = IntMatrix(total.ngens, k,
                            tuple(tuple(pres.project.entries[r][offset + j] for j in range(k))
                                  for r in range(total.ngens)))
        incls.append(ModuleMap(p, total, inc_mat))
        proj_mat = IntMatrix(k, total.ngens, tuple(pres.lift.entries[offset + j] for j in range(k)))
        projs.append(ModuleMap(total, p, proj_mat))
        offset += k
    assert offset == n
    return DirectSum(total, tuple(incls), tuple(projs))


def direct_sum_maps(maps: Sequence[ModuleMap], dom_sum: DirectSum, cod_sum: DirectSum) -> ModuleMap:
    """Block-diagonal map between direct sums realized in canonical form."""
    total = None
    for f, inc, prj in zip(maps, cod_sum.inclusions, dom_sum.projections):
        piece = inc @ f @ prj
        total = piece if total is None else total + piece
    assert total is not None
    return total


def direct_sum_sequences(a: ShortSequence, b: ShortSequence) -> ShortSequence:
    ls = direct_sum([a.left, b.left])
    ms = direct_sum([a.middle, b.middle])
    rs = direct_sum([a.right, b.right])
    f = direct_sum_maps([a.f, b.f], ls, ms)
    g = direct_sum_maps([a.g, b.g], ms, rs)
    return ShortSequence(ls.module, ms.module, rs.module, f, g)


# ---------------------------------------------------------------------------
# Random generation (deterministic per seed)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def random_module(modulus: int, rng: random.Random, max_gens: int = 3) -> CanonicalModule:
    divs = [d for d in divisors(modulus) if d >= 2]
    if not divs:
        return CanonicalModule.zero(modulus)
    k = rng.randint(0, max_gens)
    chain: list[int] = []
    for _ in range(k):
        lower = chain[-1] if chain else None
        candidates = divs if lower is None else [d for d in divs if d % lower == 0]
        if not candidates:
            break
        chain.append(rng.choice(candidates))
    return CanonicalModule(modulus, tuple(chain))


def random_hom(domain: CanonicalModule, codomain: CanonicalModule,
               rng: random.Random) -> ModuleMap:
    rows = []
    for e in codomain.invariants:
        row = []
        for d in domain.invariants:
            g = gcd(d, e)
            row.append(rng.randrange(g) * (e // g))
        rows.append(row)
    return ModuleMap(domain, codomain, IntMatrix.from_rows(rows, cols=domain.ngens))


def random_ses(modulus: int, seed, max_gens: int = 3) -> ShortSequence:
    """A random short exact sequence, exact by construction.

    A random map q out of a random middle module is generated; the right
    term is the image of q with the corestriction as quotient map, and the
    left term is the kernel with its inclusion.
    """
    if modulus < 2:
        raise InputError("random sequences need modulus >= 2")
    rng = random.Random(f"ses:{modulus}:{seed}:{max_gens}")
    middle = random_module(modulus, rng, max_gens)
    target = random_module(modulus, rng, max_gens)
    q = random_hom(middle, target, rng)
    img = q.image()
    right = img.module
    cols = [img.coords(q.matrix.col(j)) for j in range(middle.ngens)]
    g_mat = IntMatrix(right.ngens, middle.ngens,
                      tuple(tuple(cols[j][i] for j in range(middle.ngens))
                            for i in range(right.ngens)))
    g = ModuleMap(middle, right, g_mat)
    ker = g.kernel()
    left = ker.module
    f = ker.inclusion_into(middle)
    return ShortSequence(left, middle, right, f, g)
