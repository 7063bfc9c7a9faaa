"""The functor-category engine over the index category of cyclic modules.

The index category D has one object per divisor d of N, standing for the
cyclic module Z/d.  Hom(Z/d, Z/e) is cyclic of order gcd(d, e) with canonical
generator g_{d,e}: 1 -> e/gcd(d, e); composites of canonical generators are
scalar multiples of canonical generators, so a single coefficient table
describes all of D.  Every finite Z/N-module is a direct sum of the cyclic
ones, so additive functors on D determine additive functors on all finite
modules; this is what makes the index finite.

An additive functor is stored by its values (canonical modules; D is
Z/N-linear, so values are automatically Z/N-modules) and by its action on
each canonical generator.  Functoriality, identities, and hom-group torsion
are verified at construction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Callable, Optional, Sequence

from .errors import InputError, InternalCheckError
from .finmod import (
    CanonicalModule,
    HomModule,
    ModuleMap,
    Presentation,
    Subgroup,
    direct_sum,
    direct_sum_maps,
    divisors,
    dual_map,
    dual_module,
    hom_module,
    normalize_presentation,
    quotient_by_subgroup,
    random_hom,
    random_module,
    tensor_modules,
    tensor_pair_map,
)
from .zmodlin import IntMatrix, Vec, kernel_mod

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"


@dataclass(frozen=True)
class IndexCategoryD:
    modulus: int
    objects: tuple[int, ...]

    def index_of(self, d: int) -> int:
        try:
            return self.objects.index(d)
        except ValueError:
            raise InputError(f"{d} is not an object (divisor of {self.modulus})")

    def cyclic(self, d: int) -> CanonicalModule:
        return CanonicalModule.cyclic(self.modulus, d)

    def hom_order(self, d: int, e: int) -> int:
        return gcd(d, e)

    def gen_image(self, d: int, e: int) -> int:
        """Image of 1 under the canonical generator g_{d,e}: Z/d -> Z/e."""
        return e // gcd(d, e)

    def gen_map(self, d: int, e: int) -> ModuleMap:
        dom, cod = self.cyclic(d), self.cyclic(e)
        if dom.is_zero() or cod.is_zero():
            return ModuleMap.zero(dom, cod)
        return ModuleMap.from_rows(dom, cod, [[self.gen_image(d, e)]])

    def comp_coeff(self, d: int, e: int, f: int) -> int:
        """Coefficient c with g_{e,f} o g_{d,e} == c * g_{d,f} (c mod gcd(d, f))."""
        if f == 1:
            return 0
        composite = (self.gen_image(d, e) * self.gen_image(e, f)) % f
        gdf = gcd(d, f)
        gen = f // gdf
        if composite % gen:
            raise InternalCheckError("composite not a multiple of the canonical generator")
        return (composite // gen) % gdf


def build_index_category(modulus: int) -> IndexCategoryD:
    if modulus < 1:
        raise InputError("modulus must be >= 1")
    cat = IndexCategoryD(modulus, tuple(divisors(modulus)))
    for d in cat.objects:
        if d > 1 and cat.comp_coeff(d, d, d) != 1:
            raise InternalCheckError("identity generator is not the identity")
    objs = cat.objects
    for d in objs:
        for e in objs:
            for f in objs:
                for h in objs:
                    lhs = cat.comp_coeff(d, e, f) * cat.comp_coeff(d, f, h)
                    rhs = cat.comp_coeff(e, f, h) * cat.comp_coeff(d, e, h)
                    if (lhs - rhs) % gcd(d, h):
                        raise InternalCheckError("composition table is not associative")
    return cat


@dataclass(frozen=True)
class FunctorOnD:
    """An additive functor on D, stored on objects and canonical generators.

    For a covariant functor ``action(d, e)`` is F(g_{d,e}): F(d) -> F(e);
    for a contravariant one it is F(g_{d,e}): F(e) -> F(d).
    """

    category: IndexCategoryD
    variance: str
    values: tuple[CanonicalModule, ...]
    actions: tuple[ModuleMap, ...]  # flattened (index d, index e)

    def __post_init__(self):
        if self.variance not in (COVARIANT, CONTRAVARIANT):
            raise InputError("variance must be covariant or contravariant")
        nobj = len(self.category.objects)
        if len(self.values) != nobj or len(self.actions) != nobj * nobj:
            raise InputError("functor data has wrong shape")
        self._validate()

    def value(self, d: int) -> CanonicalModule:
        return self.values[self.category.index_of(d)]

    def action(self, d: int, e: int) -> ModuleMap:
        nobj = len(self.category.objects)
        return self.actions[self.category.index_of(d) * nobj + self.category.index_of(e)]

    def is_covariant(self) -> bool:
        return self.variance == COVARIANT

    def _validate(self):
        cat = self.category
        for d in cat.objects:
            if self.action(d, d) != ModuleMap.identity(self.value(d)):
                raise InputError("functor does not send identity generators to identities")
        for d in cat.objects:
            for e in cat.objects:
                act = self.action(d, e)
                if self.is_covariant():
                    ok = act.domain == self.value(d) and act.codomain == self.value(e)
                else:
                    ok = act.domain == self.value(e) and act.codomain == self.value(d)
                if not ok:
                    raise InputError("action has the wrong type for the variance")
                if not act.scale(cat.hom_order(d, e)).is_zero_map():
                    raise InputError("action violates hom-group torsion")
        for d in cat.objects:
            for e in cat.objects:
                for f in cat.objects:
                    c = cat.comp_coeff(d, e, f)
                    if self.is_covariant():
                        lhs = self.action(e, f) @ self.action(d, e)
                    else:
                        lhs = self.action(d, e) @ self.action(e, f)
                    if lhs != self.action(d, f).scale(c):
                        raise InputError("functor violates the composition table")


def functor_from_values(cat: IndexCategoryD, variance: str,
                        value_of: Callable[[int], CanonicalModule],
                        action_of: Callable[[int, int], ModuleMap]) -> FunctorOnD:
    values = tuple(value_of(d) for d in cat.objects)
    actions = tuple(action_of(d, e) for d in cat.objects for e in cat.objects)
    return FunctorOnD(cat, variance, values, actions)


def zero_functor(cat: IndexCategoryD, variance: str = COVARIANT) -> FunctorOnD:
    zero = CanonicalModule.zero(cat.modulus)
    return functor_from_values(cat, variance, lambda d: zero,
                               lambda d, e: ModuleMap.zero(zero, zero))


# ---------------------------------------------------------------------------
# Hom-group plumbing


def postcompose(v: ModuleMap, source: CanonicalModule) -> ModuleMap:
    """Hom(source, dom v) -> Hom(source, cod v), h -> v o h."""
    hsrc = hom_module(source, v.domain)
    hdst = hom_module(source, v.codomain)
    cols = [hdst.from_map(v @ hsrc.to_map(hsrc.module.generator(i)))
            for i in range(hsrc.module.ngens)]
    mat = IntMatrix(hdst.module.ngens, hsrc.module.ngens,
                    tuple(tuple(cols[j][i] for j in range(hsrc.module.ngens))
                          for i in range(hdst.module.ngens)))
    return ModuleMap(hsrc.module, hdst.module, mat)


def precompose(u: ModuleMap, target: CanonicalModule) -> ModuleMap:
    """Hom(cod u, target) -> Hom(dom u, target), h -> h o u."""
    hsrc = hom_module(u.codomain, target)
    hdst = hom_module(u.domain, target)
    cols = [hdst.from_map(hsrc.to_map(hsrc.module.generator(i)) @ u)
            for i in range(hsrc.module.ngens)]
    mat = IntMatrix(hdst.module.ngens, hsrc.module.ngens,
                    tuple(tuple(cols[j][i] for j in range(hsrc.module.ngens))
                          for i in range(hdst.module.ngens)))
    return ModuleMap(hsrc.module, hdst.module, mat)


# ---------------------------------------------------------------------------
# Representables and module-induced functors


@lru_cache(maxsize=None)
def representable_cov(cat: IndexCategoryD, a: int) -> FunctorOnD:
    """The covariant representable D(a, -): d -> Hom(Z/a, Z/d)."""
    cat.index_of(a)

    def value_of(d):
        return CanonicalModule.cyclic(cat.modulus, cat.hom_order(a, d))

    def action_of(d, e):
        dom, cod = value_of(d), value_of(e)
        if dom.is_zero() or cod.is_zero():
            return ModuleMap.zero(dom, cod)
        return ModuleMap.from_rows(dom, cod, [[cat.comp_coeff(a, d, e)]])

    return functor_from_values(cat, COVARIANT, value_of, action_of)


@lru_cache(maxsize=None)
def restrict_module(cat: IndexCategoryD, c: CanonicalModule) -> FunctorOnD:
    """The contravariant functor d -> Hom(Z/d, c) restricted to D."""
    if c.modulus != cat.modulus:
        raise InputError("module modulus does not match the category")

    def value_of(d):
        return hom_module(cat.cyclic(d), c).module

    def action_of(d, e):
        # Hom(Z/e, c) -> Hom(Z/d, c), h -> h o g_{d,e}
        return precompose(cat.gen_map(d, e), c)

    return functor_from_values(cat, CONTRAVARIANT, value_of, action_of)


@lru_cache(maxsize=None)
def tensor_functor(cat: IndexCategoryD, y: CanonicalModule) -> FunctorOnD:
    """The covariant functor d -> y (x) Z/d."""
    if y.modulus != cat.modulus:
        raise InputError("module modulus does not match the category")

    def value_of(d):
        return tensor_modules(y, cat.cyclic(d)).module

    def action_of(d, e):
        return tensor_pair_map(ModuleMap.identity(y), cat.gen_map(d, e))

    return functor_from_values(cat, COVARIANT, value_of, action_of)


def dual_functor(F: FunctorOnD) -> FunctorOnD:
    """Objectwise character dual; reverses variance."""
    variance = CONTRAVARIANT if F.is_covariant() else COVARIANT
    return functor_from_values(
        F.category, variance,
        lambda d: dual_module(F.value(d)).module,
        lambda d, e: dual_map(F.action(d, e)))


def direct_sum_functors(F: FunctorOnD, G: FunctorOnD) -> FunctorOnD:
    if F.category != G.category or F.variance != G.variance:
        raise InputError("direct sum of incompatible functors")
    cat = F.category
    sums = {d: direct_sum([F.value(d), G.value(d)]) for d in cat.objects}

    def action_of(d, e):
        if F.is_covariant():
            src, dst = sums[d], sums[e]
        else:
            src, dst = sums[e], sums[d]
        return direct_sum_maps([F.action(d, e), G.action(d, e)], src, dst)

    return functor_from_values(cat, F.variance, lambda d: sums[d].module, action_of)


# ---------------------------------------------------------------------------
# Finitely presented functors: cokernels of maps of representables


@dataclass(frozen=True)
class FpValue:
    """Value of the fp functor attached to u at one module, with cokernel data."""

    module: CanonicalModule
    proj: ModuleMap      # from the hom group onto the value
    lift: IntMatrix      # integer section of proj
    hom: HomModule       # realization of the hom group being quotiented


@lru_cache(maxsize=None)
def fp_value(u: ModuleMap, c: CanonicalModule, variance: str = COVARIANT) -> FpValue:
    """coker(Hom(a, c) -> Hom(b, c)) for u: b -> a (covariant), or
    coker(Hom(c, b) -> Hom(c, a)) (contravariant)."""
    if variance == COVARIANT:
        induced = precompose(u, c)
        hom = hom_module(u.domain, c)
    else:
        induced = postcompose(u, c)
        hom = hom_module(c, u.codomain)
    module, proj, lift = quotient_by_subgroup(induced.codomain, induced.image())
    return FpValue(module, proj, lift, hom)


def eval_fp_functor(u: ModuleMap, c: CanonicalModule,
                    variance: str = COVARIANT) -> CanonicalModule:
    return fp_value(u, c, variance).module


def fp_induced(u: ModuleMap, f: ModuleMap, variance: str = COVARIANT) -> ModuleMap:
    """F_u(dom f) -> F_u(cod f) (reversed for the contravariant functor)."""
    if variance == COVARIANT:
        src = fp_value(u, f.domain, variance)
        dst = fp_value(u, f.codomain, variance)
    else:
        src = fp_value(u, f.codomain, variance)
        dst = fp_value(u, f.domain, variance)
    cols = []
    for i in range(src.module.ngens):
        rep = src.hom.to_map(src.lift.col(i))
        moved = (f @ rep) if variance == COVARIANT else (rep @ f)
        cols.append(dst.proj.apply(dst.hom.from_map(moved)))
    mat = IntMatrix(dst.module.ngens, src.module.ngens,
                    tuple(tuple(cols[j][i] for j in range(src.module.ngens))
                          for i in range(dst.module.ngens)))
    return ModuleMap(src.module, dst.module, mat)


def fp_functor_from_map(u: ModuleMap, cat: IndexCategoryD,
                        variance: str = COVARIANT) -> FunctorOnD:
    """The finitely presented functor presented by u, as a functor on D."""
    if u.domain.modulus != cat.modulus:
        raise InputError("map modulus does not match the category")
    return functor_from_values(
        cat, variance,
        lambda d: fp_value(u, cat.cyclic(d), variance).module,
        lambda d, e: fp_induced(u, cat.gen_map(d, e), variance))


# ---------------------------------------------------------------------------
# Coend tensor product


@dataclass(frozen=True)
class CoendResult:
    """Coend of G and F over D: quotient of the objectwise tensor products by
    the relations identifying the two actions of every canonical generator."""

    group: CanonicalModule
    injections: tuple[ModuleMap, ...]
    offsets: tuple[int, ...] = field(repr=False)
    orders: tuple[int, ...] = field(repr=False)
    pres: Presentation = field(repr=False)


def coend_tensor(G: FunctorOnD, F: FunctorOnD) -> CoendResult:
    if G.category != F.category:
        raise InputError("coend across different index categories")
    if G.is_covariant() or not F.is_covariant():
        raise InputError("coend needs a contravariant left and a covariant right functor")
    cat = G.category
    tensors = [tensor_modules(G.value(d), F.value(d)) for d in cat.objects]
    offsets = []
    orders: list[int] = []
    for t in tensors:
        offsets.append(len(orders))
        orders.extend(t.module.invariants)
    total = len(orders)

    rel_cols: list[list[int]] = []
    for i_d, d in enumerate(cat.objects):
        for i_e, e in enumerate(cat.objects):
            if d == e:
                continue
            ge, fd = G.value(e), F.value(d)
            if ge.is_zero() or fd.is_zero():
                continue
            g_act = G.action(d, e)     # G(e) -> G(d)
            f_act = F.action(d, e)     # F(d) -> F(e)
            for x in range(ge.ngens):
                gx = g_act.apply(ge.generator(x))
                for y in range(fd.ngens):
                    fy = f_act.apply(fd.generator(y))
                    left = tensors[i_d].pure(gx, fd.generator(y))
                    right = tensors[i_e].pure(ge.generator(x), fy)
                    col = [0] * total
                    for i, v in enumerate(left):
                        col[offsets[i_d] + i] += v
                    for i, v in enumerate(right):
                        col[offsets[i_e] + i] -= v
                    if any(col):
                        rel_cols.append(col)
    for i, o in enumerate(orders):
        col = [0] * total
        col[i] = o
        rel_cols.append(col)
    rel = IntMatrix(total, len(rel_cols),
                    tuple(tuple(c[i] for c in rel_cols) for i in range(total)))
    pres = normalize_presentation(rel, cat.modulus)
    injections = []
    for i_d, t in enumerate(tensors):
        k = t.module.ngens
        mat = IntMatrix(pres.module.ngens, k,
                        tuple(tuple(pres.project.entries[r][offsets[i_d] + j] for j in range(k))
                              for r in range(pres.module.ngens)))
        injections.append(ModuleMap(t.module, pres.module, mat))
    return CoendResult(pres.module, tuple(injections), tuple(offsets), tuple(orders), pres)


def kan_eval(F: FunctorOnD, c: CanonicalModule) -> CanonicalModule:
    """Extension of F to an arbitrary finite module c via the coend formula."""
    return coend_tensor(restrict_module(F.category, c), F).group


def _hom_scalar(hom: HomModule, gen_image: int, element: Sequence[int]) -> int:
    """Express an element of a cyclic hom group as r times the canonical
    generator (whose matrix entry is gen_image); returns r."""
    f = hom.to_map(element)
    if f.matrix.rows == 0 or f.matrix.cols == 0:
        return 0
    entry = f.matrix.entries[0][0]
    if entry % gen_image:
        raise InternalCheckError("hom element outside the cyclic carrier")
    return entry // gen_image


def coend_evaluation_map(F: FunctorOnD, a: int) -> tuple[CoendResult, ModuleMap]:
    """The canonical evaluation map coend(D(-, Z/a), F) -> F(a).

    On the slice at object d it sends h tensor y to F(h)(y).  The assembled
    ambient map is verified to kill every coend relation before being pushed
    to the canonical quotient.
    """
    cat = F.category
    if not F.is_covariant():
        raise InputError("evaluation map needs a covariant functor")
    G = restrict_module(cat, cat.cyclic(a))
    coend = coend_tensor(G, F)
    fa = F.value(a)
    total = len(coend.orders)
    W = [[0] * total for _ in range(fa.ngens)]
    for i_d, d in enumerate(cat.objects):
        gd, fd = G.value(d), F.value(d)
        if gd.is_zero() or fd.is_zero():
            continue
        hom = hom_module(cat.cyclic(d), cat.cyclic(a))
        t = tensor_modules(gd, fd)
        act = F.action(d, a)
        gen_img = cat.gen_image(d, a)
        scalars = [_hom_scalar(hom, gen_img, gd.generator(p)) for p in range(gd.ngens)]
        for col_i in range(t.module.ngens):
            coords = t.pres.lift.col(col_i)
            image = [0] * fa.ngens
            for p in range(gd.ngens):
                if not scalars[p]:
                    continue
                for q in range(fd.ngens):
                    cpq = coords[t._coord_index(p, q)]
                    if not cpq:
                        continue
                    w = cpq * scalars[p]
                    for r in range(fa.ngens):
                        image[r] += w * act.matrix.entries[r][q]
            for r in range(fa.ngens):
                W[r][coend.offsets[i_d] + col_i] += image[r]
    Wm = IntMatrix.from_rows(W, cols=total)
    final = Wm @ coend.pres.lift
    return coend, ModuleMap(coend.group, fa, final)


def _coend_transport(src: CoendResult, dst: CoendResult,
                     blocks: Sequence[ModuleMap]) -> ModuleMap:
    """Block-diagonal map between coend ambients pushed to the quotients."""
    total_src = len(src.orders)
    total_dst = len(dst.orders)
    W = [[0] * total_src for _ in range(total_dst)]
    for i_d, blk in enumerate(blocks):
        for r in range(blk.matrix.rows):
            for c in range(blk.matrix.cols):
                W[dst.offsets[i_d] + r][src.offsets[i_d] + c] = blk.matrix.entries[r][c]
    Wm = IntMatrix.from_rows(W, cols=total_src)
    final = dst.pres.project @ Wm @ src.pres.lift
    return ModuleMap(src.group, dst.group, final)


def coend_map_left(G1: FunctorOnD, G2: FunctorOnD, F: FunctorOnD,
                   eta: Sequence[ModuleMap],
                   src: Optional[CoendResult] = None,
                   dst: Optional[CoendResult] = None) -> ModuleMap:
    """coend(G1, F) -> coend(G2, F) induced by a natural map eta: G1 -> G2."""
    cat = F.category
    src = src if src is not None else coend_tensor(G1, F)
    dst = dst if dst is not None else coend_tensor(G2, F)
    blocks = [tensor_pair_map(eta[i], ModuleMap.identity(F.value(d)))
              for i, d in enumerate(cat.objects)]
    return _coend_transport(src, dst, blocks)


def coend_map_right(G: FunctorOnD, F1: FunctorOnD, F2: FunctorOnD,
                    eta: Sequence[ModuleMap],
                    src: Optional[CoendResult] = None,
                    dst: Optional[CoendResult] = None) -> ModuleMap:
    """coend(G, F1) -> coend(G, F2) induced by a natural map eta: F1 -> F2."""
    cat = G.category
    src = src if src is not None else coend_tensor(G, F1)
    dst = dst if dst is not None else coend_tensor(G, F2)
    blocks = [tensor_pair_map(ModuleMap.identity(G.value(d)), eta[i])
              for i, d in enumerate(cat.objects)]
    return _coend_transport(src, dst, blocks)


# ---------------------------------------------------------------------------
# Natural transformations


@dataclass(frozen=True)
class NatModule:
    """The group of natural transformations F -> H with realization data."""

    source: FunctorOnD
    target: FunctorOnD
    module: CanonicalModule
    subgroup: Subgroup
    homs: tuple[HomModule, ...]
    offsets: tuple[int, ...]

    def to_family(self, element: Sequence[int]) -> tuple[ModuleMap, ...]:
        amb = self.subgroup.element(element)
        fams = []
        for i, h in enumerate(self.homs):
            start = self.offsets[i]
            fams.append(h.to_map(amb[start:start + h.module.ngens]))
        return tuple(fams)

    def from_family(self, maps: Sequence[ModuleMap]) -> Vec:
        amb: list[int] = []
        for h, m in zip(self.homs, maps):
            amb.extend(h.from_map(m))
        return self.subgroup.coords(amb)


def nat_transformations(F: FunctorOnD, H: FunctorOnD) -> NatModule:
    """All families (alpha_d) commuting with every generator action, found by
    solving one linear congruence system over the hom-group coordinates."""
    if F.category != H.category or F.variance != H.variance:
        raise InputError("natural transformations need same category and variance")
    cat = F.category
    homs = tuple(hom_module(F.value(d), H.value(d)) for d in cat.objects)
    offsets = []
    orders: list[int] = []
    for h in homs:
        offsets.append(len(orders))
        orders.extend(h.module.invariants)
    total = len(orders)

    gen_maps = [[h.to_map(h.module.generator(j)) for j in range(h.module.ngens)]
                for h in homs]

    rows: list[list[int]] = []
    moduli: list[int] = []
    cov = F.is_covariant()
    for i_d, d in enumerate(cat.objects):
        for i_e, e in enumerate(cat.objects):
            if d == e:
                continue
            f_act = F.action(d, e)
            h_act = H.action(d, e)
            # naturality against g_{d,e} is an equation in Hom(dom_val, cod_val)
            if cov:
                dom_val, cod_val = F.value(d), H.value(e)
                i_first, i_second = i_d, i_e
            else:
                dom_val, cod_val = F.value(e), H.value(d)
                i_first, i_second = i_e, i_d
            if dom_val.is_zero() or cod_val.is_zero():
                continue
            contrib: dict[int, ModuleMap] = {}
            for j, gm in enumerate(gen_maps[i_first]):
                contrib[offsets[i_first] + j] = h_act @ gm
            for j, gm in enumerate(gen_maps[i_second]):
                contrib[offsets[i_second] + j] = (gm @ f_act).scale(-1)
            for r in range(cod_val.ngens):
                for c in range(dom_val.ngens):
                    row = [0] * total
                    nonzero = False
                    for key, mp in contrib.items():
                        v = mp.matrix.entries[r][c]
                        if v:
                            row[key] = v
                            nonzero = True
                    if nonzero:
                        rows.append(row)
                        moduli.append(cod_val.invariants[r])
    if rows:
        system = IntMatrix.from_rows(rows, cols=total)
        gens = kernel_mod(system, moduli)
    else:
        gens = [tuple(1 if i == j else 0 for j in range(total)) for i in range(total)]
    sub = Subgroup(tuple(orders), cat.modulus, tuple(gens))
    return NatModule(F, H, sub.module, sub, homs, tuple(offsets))


# ---------------------------------------------------------------------------
# Duality isomorphism checks


def hom_tensor_duality_map(G: FunctorOnD, F: FunctorOnD) -> tuple[ModuleMap, NatModule]:
    """The canonical map (G (x) F)* -> Nat(F, G*).

    A character chi of the coend goes to the transformation whose component
    at d sends y in F(d) to the character x -> chi(inj_d(x (x) y)) of G(d).
    """
    cat = G.category
    coend = coend_tensor(G, F)
    c_star = dual_module(coend.group)
    g_star = dual_functor(G)
    nat = nat_transformations(F, g_star)
    N = cat.modulus
    cols = []
    for t in range(c_star.module.ngens):
        order_t = coend.group.invariants[t]
        fams = []
        for i_d, d in enumerate(cat.objects):
            gd, fd = G.value(d), F.value(d)
            dual_gd = g_star.value(d)
            tmod = tensor_modules(gd, fd)
            inj = coend.injections[i_d]
            rows = []
            for p in range(gd.ngens):
                row = []
                for q in range(fd.ngens):
                    z = inj.apply(tmod.pure(gd.generator(p), fd.generator(q)))
                    w = (z[t] * (N // order_t)) % N
                    step = N // dual_gd.invariants[p]
                    if w % step:
                        raise InternalCheckError("duality character escapes the torsion carrier")
                    row.append((w // step) % dual_gd.invariants[p])
                rows.append(tuple(row))
            fams.append(ModuleMap(fd, dual_gd, IntMatrix(gd.ngens, fd.ngens, tuple(rows))))
        cols.append(nat.from_family(fams))
    mat = IntMatrix(nat.module.ngens, c_star.module.ngens,
                    tuple(tuple(cols[j][i] for j in range(c_star.module.ngens))
                          for i in range(nat.module.ngens)))
    return ModuleMap(c_star.module, nat.module, mat), nat


def hom_tensor_duality_check(G: FunctorOnD, F: FunctorOnD) -> bool:
    themap, _ = hom_tensor_duality_map(G, F)
    return themap.is_bijective()


def dual_of_hom_check(x: CanonicalModule, cat: IndexCategoryD) -> bool:
    """Whether x* (x) Z/d and Hom(Z/d, x)* agree at every object d of D,
    via the canonical pairing (chi tensor t)(h) = chi(h(t))."""
    N = cat.modulus
    xd = dual_module(x)
    for d in cat.objects:
        cyc = cat.cyclic(d)
        t = tensor_modules(xd.module, cyc)
        h = hom_module(cyc, x)
        hd = dual_module(h.module)
        cols = []
        for i in range(t.module.ngens):
            coords = t.pres.lift.col(i)
            mu = []
            for w in range(h.module.ngens):
                hw = h.to_map(h.module.generator(w))
                himg = hw.apply((1,)) if not cyc.is_zero() else x.zero_element()
                val = 0
                for p in range(xd.module.ngens):
                    cp = coords[t._coord_index(p, 0)]
                    if cp:
                        val += cp * himg[p] * (N // x.invariants[p])
                val %= N
                step = N // h.module.invariants[w]
                if val % step:
                    raise InternalCheckError("dual-of-hom character escapes the carrier")
                mu.append((val // step) % h.module.invariants[w])
            cols.append(mu)
        mat = IntMatrix(hd.module.ngens, t.module.ngens,
                        tuple(tuple(cols[j][i] for j in range(t.module.ngens))
                              for i in range(hd.module.ngens)))
        themap = ModuleMap(t.module, hd.module, mat)
        if not themap.is_bijective():
            return False
    return True


# ---------------------------------------------------------------------------
# Random functors (cokernels of random maps between sums of representables)


def random_functor(cat: IndexCategoryD, rng: random.Random, max_gens: int = 2,
                   variance: str = COVARIANT) -> FunctorOnD:
    b = random_module(cat.modulus, rng, max_gens)
    a = random_module(cat.modulus, rng, max_gens)
    u = random_hom(b, a, rng)
    return fp_functor_from_map(u, cat, variance)


def random_contra_functor(cat: IndexCategoryD, rng: random.Random,
                          max_gens: int = 2) -> FunctorOnD:
    kind = rng.randrange(3)
    if kind == 0:
        return restrict_module(cat, random_module(cat.modulus, rng, max_gens))
    if kind == 1:
        return dual_functor(random_functor(cat, rng, max_gens, COVARIANT))
    return random_functor(cat, rng, max_gens, CONTRAVARIANT)
