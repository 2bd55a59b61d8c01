"""Finitely presented graded modules over edge rings and weight-homogeneous
maps between them.

Carries the contraction functor F0(M) = M/(e - e'), its derived torsion
functor F1(M) = ker(M --(e-e')--> M) restricted to the contracted ring, the
kernel/cokernel/image/pullback toolbox, annihilators and cyclic covers, Hilbert
functions, and the support criterion deciding membership in the Serre
subcategory generated by a list of partition modules.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ._core import impl as K
from .errors import ResourceCapError, StructuralError, ValidationError
from .exactalg import (
    EdgeRing,
    FreeElement,
    FreeModule,
    GradedPoly,
    groebner,
    ideal_contains_one,
    intersect_ideals,
    normal_form,
    radical_member,
    reduce_with_expression,
    saturate_by_ideal,
    substitute_free,
    substitute_poly,
    syzygies,
)


class PresentedModule:
    """Graded module given by generator weights and homogeneous relations.

    The zero module is canonically the empty-generator presentation.  Treat
    instances as immutable; equality and hashing are structural.
    """

    __slots__ = ("ring", "gen_weights", "relations", "_cache")

    def __init__(self, ring: EdgeRing, gen_weights: Sequence[int], relations: Sequence[FreeElement] = ()):
        self.ring = ring
        self.gen_weights = tuple(int(w) for w in gen_weights)
        free = FreeModule(ring, self.gen_weights)
        rels = []
        for r in relations:
            if not isinstance(r, FreeElement) or r.module != free:
                raise StructuralError("relation outside the module's free cover")
            if not r.is_homogeneous:
                raise ValidationError(f"inhomogeneous relation {r}")
            if not r.is_zero():
                rels.append(r)
        self.relations = tuple(rels)
        self._cache = {}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring: EdgeRing) -> "PresentedModule":
        return cls(ring, (), ())

    @classmethod
    def free(cls, ring: EdgeRing, weights: Sequence[int]) -> "PresentedModule":
        return cls(ring, weights, ())

    @classmethod
    def from_ideal(cls, ring: EdgeRing, ideal: Sequence[GradedPoly], shift: int = 0) -> "PresentedModule":
        """Rank-1 module R/(ideal) with its generator in weight `shift`."""
        free = FreeModule(ring, (shift,))
        rels = [FreeElement(free, g.terms) for g in ideal if not g.is_zero()]
        return cls(ring, (shift,), rels)

    # -- basic structure ----------------------------------------------

    @property
    def free_cover(self) -> FreeModule:
        return FreeModule(self.ring, self.gen_weights)

    @property
    def rank(self) -> int:
        return len(self.gen_weights)

    def gen(self, i: int) -> FreeElement:
        return self.free_cover.gen(i)

    def relation_gb(self) -> tuple[FreeElement, ...]:
        gb = self._cache.get("gb")
        if gb is None:
            gb = groebner(list(self.relations), module=self.free_cover)
            self._cache["gb"] = gb
        return gb

    def is_zero(self) -> bool:
        z = self._cache.get("zero")
        if z is None:
            gb = self.relation_gb()
            z = all(normal_form(self.gen(i), gb).is_zero() for i in range(self.rank))
            self._cache["zero"] = z
        return z

    def shift(self, s: int) -> "PresentedModule":
        """Add s to every generator weight."""
        if s == 0:
            return self
        free = FreeModule(self.ring, tuple(w + s for w in self.gen_weights))
        return PresentedModule(
            self.ring,
            free.weights,
            [FreeElement(free, r.terms) for r in self.relations],
        )

    def hilbert_function(self, w: int) -> int:
        key = ("hf", w)
        v = self._cache.get(key)
        if v is None:
            lms = [(g.terms[0][0], g.terms[0][1]) for g in self.relation_gb()]
            v = 0
            n = self.ring.nvars
            for pos, wp in enumerate(self.gen_weights):
                d = w - wp
                if d < 0:
                    continue
                pos_lms = [e for q, e in lms if q == pos]
                for expo in _monomials(d, n):
                    if not any(K.expo_divides(l, expo) for l in pos_lms):
                        v += 1
            self._cache[key] = v
        return v

    def same_presentation(self, other: "PresentedModule") -> bool:
        """Same ring, same generator weights, same relation submodule."""
        return (
            isinstance(other, PresentedModule)
            and self.ring == other.ring
            and self.gen_weights == other.gen_weights
            and self.relation_gb() == other.relation_gb()
        )

    def __eq__(self, other):
        return (
            isinstance(other, PresentedModule)
            and self.ring == other.ring
            and self.gen_weights == other.gen_weights
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.ring, self.gen_weights, self.relations))

    def __repr__(self):
        rels = "; ".join(str(r) for r in self.relations)
        return f"PresentedModule(vars={','.join(self.ring.variables)} weights={list(self.gen_weights)} rels=[{rels}])"


@lru_cache(maxsize=None)
def _monomials(total: int, n: int) -> tuple:
    """All exponent tuples of length n summing to total."""
    if n == 0:
        return ((),) if total == 0 else ()
    if n == 1:
        return ((total,),)
    out = []
    for first in range(total + 1):
        for rest in _monomials(total - first, n - 1):
            out.append((first,) + rest)
    return tuple(out)


class ModuleMap:
    """Weight-homogeneous map between presented modules.

    matrix[i][j] is the coefficient of target generator i in the image of
    source generator j; every entry is homogeneous of weight
    source_weight[j] + degree - target_weight[i].  Construction checks
    well-definedness: each source relation must land in the target's relation
    submodule.
    """

    __slots__ = ("source", "target", "matrix", "degree", "_cache")

    def __init__(self, source: PresentedModule, target: PresentedModule, matrix, degree: int = 0, check: bool = True):
        self.source = source
        self.target = target
        self.degree = int(degree)
        rows = tuple(tuple(row) for row in matrix)
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise StructuralError(
                f"matrix shape {len(rows)}x{'?' if not rows else len(rows[0])} "
                f"does not match target rank {target.rank} x source rank {source.rank}"
            )
        for i, row in enumerate(rows):
            for j, entry in enumerate(row):
                if not isinstance(entry, GradedPoly) or entry.ring != target.ring:
                    raise StructuralError(f"matrix entry ({i},{j}) not in the target ring")
                if entry.is_zero():
                    continue
                expected = source.gen_weights[j] + self.degree - target.gen_weights[i]
                if entry.weight() != expected:
                    raise StructuralError(
                        f"entry ({i},{j}) has weight {entry.weight()}, expected {expected}"
                    )
        if source.ring != target.ring:
            raise StructuralError("source and target over different rings")
        self.matrix = rows
        self._cache = {}
        if check:
            gb = target.relation_gb()
            for r in source.relations:
                if not normal_form(self.apply_free(r), gb).is_zero():
                    raise StructuralError(f"map not well defined: relation {r} escapes the target")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_columns(cls, source: PresentedModule, target: PresentedModule, columns: Sequence[FreeElement], degree: int = 0, check: bool = True) -> "ModuleMap":
        matrix = tuple(
            tuple(col.component(i) for col in columns) for i in range(target.rank)
        )
        return cls(source, target, matrix, degree, check)

    @classmethod
    def identity(cls, m: PresentedModule) -> "ModuleMap":
        one = m.ring.one()
        zero = m.ring.zero()
        matrix = tuple(
            tuple(one if i == j else zero for j in range(m.rank)) for i in range(m.rank)
        )
        return cls(m, m, matrix, 0, check=False)

    @classmethod
    def zero_map(cls, source: PresentedModule, target: PresentedModule, degree: int = 0) -> "ModuleMap":
        zero = target.ring.zero()
        matrix = tuple(tuple(zero for _ in range(source.rank)) for _ in range(target.rank))
        return cls(source, target, matrix, degree, check=False)

    # -- structure ------------------------------------------------------

    def column(self, j: int) -> FreeElement:
        cols = self._cache.get("cols")
        if cols is None:
            free = self.target.free_cover
            cols = tuple(
                free.element([self.matrix[i][jj] for i in range(self.target.rank)])
                for jj in range(self.source.rank)
            )
            self._cache["cols"] = cols
        return cols[j]

    def apply_free(self, x: FreeElement) -> FreeElement:
        """Image of a free-cover representative."""
        if x.module != self.source.free_cover:
            raise StructuralError("element not in the source free cover")
        raw = []
        for p, e, n, d in x.terms:
            for q, e2, n2, d2 in self.column(p).terms:
                raw.append((q, K.expo_add(e, e2), n * n2, d * d2))
        free = self.target.free_cover
        return FreeElement(free, K.canon(raw, *free.order()))

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other; the middle modules must present the same module."""
        if other.target != self.source and not other.target.same_presentation(self.source):
            raise StructuralError("composition mismatch")
        cols = [self.apply_free(other.column(j)) for j in range(other.source.rank)]
        return ModuleMap.from_columns(
            other.source, self.target, cols, self.degree + other.degree, check=False
        )

    def is_mono(self) -> bool:
        return kernel(self)[0].is_zero()

    def is_epi(self) -> bool:
        return cokernel(self)[0].is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, ModuleMap)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
            and self.degree == other.degree
        )

    def __hash__(self):
        return hash((self.source, self.target, self.matrix, self.degree))

    def __repr__(self):
        rows = "; ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.matrix)
        return f"ModuleMap(deg={self.degree} {rows})"


# ---------------------------------------------------------------------------
# Kernels, cokernels, images, sums, pullbacks


def _project_head(elem: FreeElement, free: FreeModule, count: int) -> FreeElement:
    terms = tuple(t for t in elem.terms if t[0] < count)
    return FreeElement(free, K.canon(terms, *free.order()))


def _presentation_of_span(ambient: PresentedModule, gens: Sequence[FreeElement]):
    """Presentation of the submodule generated by gens (given in the free
    cover), with generators exactly the nonzero classes among gens."""
    gb = ambient.relation_gb()
    kept = [g for g in gens if not normal_form(g, gb).is_zero()]
    if not kept:
        return PresentedModule.zero(ambient.ring), ()
    weights = tuple(g.weight() for g in kept)
    items = list(kept) + list(ambient.relations)
    rel_free = FreeModule(ambient.ring, weights)
    rels = []
    for s in syzygies(items, module=ambient.free_cover):
        r = _project_head(s, rel_free, len(kept))
        if not r.is_zero():
            rels.append(r)
    return PresentedModule(ambient.ring, weights, rels), tuple(kept)


def submodule_from_elements(m: PresentedModule, elems: Sequence[FreeElement]):
    """Submodule generated by homogeneous elements, with its inclusion."""
    for x in elems:
        if x.module != m.free_cover:
            raise StructuralError("generator outside the module's free cover")
        if not x.is_homogeneous:
            raise ValidationError(f"inhomogeneous submodule generator {x}")
    sub, kept = _presentation_of_span(m, list(elems))
    incl = ModuleMap.from_columns(sub, m, kept, 0, check=False)
    return sub, incl


def kernel(phi: ModuleMap):
    """Kernel presentation and its inclusion into the source."""
    src = phi.source
    free = src.free_cover
    items = [phi.apply_free(free.gen(j)) for j in range(src.rank)]
    items += list(phi.target.relations)
    raw = []
    for s in syzygies(items, module=phi.target.free_cover):
        x = _project_head(s, free, src.rank)
        if not x.is_zero():
            raw.append(x)
    span = groebner(raw, module=free)
    sub, kept = _presentation_of_span(src, list(span))
    incl = ModuleMap.from_columns(sub, src, kept, 0, check=False)
    return sub, incl


def cokernel(phi: ModuleMap):
    """Cokernel presentation and the projection from the target."""
    tgt = phi.target
    rels = list(tgt.relations)
    for j in range(phi.source.rank):
        col = phi.column(j)
        if not col.is_zero():
            rels.append(col)
    coker = PresentedModule(tgt.ring, tgt.gen_weights, rels)
    proj = ModuleMap(tgt, coker, ModuleMap.identity(tgt).matrix, 0, check=False)
    return coker, proj


@dataclass(frozen=True)
class ImageResult:
    module: PresentedModule
    inclusion: ModuleMap  # image -> target, mono
    projection: ModuleMap  # source -> image, epi


def image(phi: ModuleMap) -> ImageResult:
    cols = [phi.column(j) for j in range(phi.source.rank)]
    img, kept = _presentation_of_span(phi.target, cols)
    incl = ModuleMap.from_columns(img, phi.target, kept, 0, check=False)
    # projection: source gen j goes to the image generator of its column
    col_index = {}
    for idx, c in enumerate(kept):
        col_index.setdefault(c, idx)
    zero = phi.target.ring.zero()
    one = phi.target.ring.one()
    matrix = [[zero] * phi.source.rank for _ in range(img.rank)]
    gb = phi.target.relation_gb()
    for j, c in enumerate(cols):
        if normal_form(c, gb).is_zero():
            continue
        matrix[col_index[c]][j] = one
    proj = ModuleMap(phi.source, img, matrix, phi.degree, check=True)
    return ImageResult(img, incl, proj)


def direct_sum(mods: Sequence[PresentedModule]):
    """Direct sum with canonical injections and projections."""
    mods = list(mods)
    if not mods:
        raise StructuralError("direct_sum needs at least one summand")
    ring = mods[0].ring
    if any(m.ring != ring for m in mods):
        raise StructuralError("summands over different rings")
    weights = tuple(w for m in mods for w in m.gen_weights)
    free = FreeModule(ring, weights)
    rels = []
    offset = 0
    offsets = []
    for m in mods:
        offsets.append(offset)
        for r in m.relations:
            rels.append(
                FreeElement(free, K.canon(tuple((p + offset, e, n, d) for p, e, n, d in r.terms), *free.order()))
            )
        offset += m.rank
    total = PresentedModule(ring, weights, rels)
    zero = ring.zero()
    one = ring.one()
    injections = []
    projections = []
    for mi, m in enumerate(mods):
        off = offsets[mi]
        inj = [[zero] * m.rank for _ in range(total.rank)]
        prj = [[zero] * total.rank for _ in range(m.rank)]
        for j in range(m.rank):
            inj[off + j][j] = one
            prj[j][off + j] = one
        injections.append(ModuleMap(m, total, inj, 0, check=False))
        projections.append(ModuleMap(total, m, prj, 0, check=False))
    return total, tuple(injections), tuple(projections)


@dataclass(frozen=True)
class PullbackResult:
    module: PresentedModule
    to_first: ModuleMap
    to_second: ModuleMap


def pullback(f: ModuleMap, g: ModuleMap) -> PullbackResult:
    """Universal pullback of f: S -> A and g: B -> A."""
    if f.target != g.target:
        raise StructuralError("pullback needs a common target")
    if f.degree != g.degree:
        raise StructuralError("pullback of maps with different degrees")
    total, injs, projs = direct_sum([f.source, g.source])
    cols = []
    for j in range(f.source.rank):
        cols.append(f.column(j))
    for j in range(g.source.rank):
        cols.append(-g.column(j))
    diff = ModuleMap.from_columns(total, f.target, cols, f.degree, check=False)
    p, incl = kernel(diff)
    return PullbackResult(p, projs[0].compose(incl), projs[1].compose(incl))


# ---------------------------------------------------------------------------
# The contraction functor and its derived torsion functor


def _base_ring(ring: EdgeRing, e: str, e_prime: str) -> EdgeRing:
    if e == e_prime:
        raise ValidationError("split edges must be distinct")
    ring.index(e)
    ring.index(e_prime)
    return EdgeRing(tuple(v for v in ring.variables if v != e_prime))


@lru_cache(maxsize=8192)
def f0(m: PresentedModule, e: str, e_prime: str) -> PresentedModule:
    """Change of scalars M/(e - e'): substitute e' by e in all relations."""
    bring = _base_ring(m.ring, e, e_prime)
    free = FreeModule(bring, m.gen_weights)
    rels = [substitute_free(r, free, {e_prime: e}) for r in m.relations]
    return PresentedModule(bring, m.gen_weights, [r for r in rels if not r.is_zero()])


@dataclass(frozen=True)
class TorsionData:
    """Torsion kernel of multiplication by e - e', before and after contraction.

    kgens are the canonical generators of {x : (e-e')x in relations} in the
    split-ring free cover; presentation is the contracted-ring presentation of
    the torsion submodule with those generators.
    """

    kgens: tuple[FreeElement, ...]
    presentation: PresentedModule


@lru_cache(maxsize=8192)
def torsion_data(m: PresentedModule, e: str, e_prime: str) -> TorsionData:
    bring = _base_ring(m.ring, e, e_prime)
    d = m.ring.var(e) - m.ring.var(e_prime)
    free = m.free_cover
    items = [d * free.gen(j) for j in range(m.rank)] + list(m.relations)
    raw = []
    for s in syzygies(items, module=free):
        x = _project_head(s, free, m.rank)
        if not x.is_zero():
            raw.append(x)
    span = groebner(raw, module=free)
    gb = m.relation_gb()
    kept = tuple(x for x in span if not normal_form(x, gb).is_zero())
    if not kept:
        return TorsionData((), PresentedModule.zero(bring))
    weights = tuple(x.weight() for x in kept)
    rel_free_split = FreeModule(m.ring, weights)
    rel_free_base = FreeModule(bring, weights)
    rels = []
    for s in syzygies(list(kept) + list(m.relations), module=free):
        r = _project_head(s, rel_free_split, len(kept))
        rb = substitute_free(r, rel_free_base, {e_prime: e})
        if not rb.is_zero():
            rels.append(rb)
    pres = PresentedModule(bring, weights, rels)
    return TorsionData(kept, pres)


def f1(m: PresentedModule, e: str, e_prime: str) -> PresentedModule:
    """Torsion submodule ker((e-e') . : M -> M) over the contracted ring."""
    return torsion_data(m, e, e_prime).presentation


def induced_map_f0(phi: ModuleMap, e: str, e_prime: str) -> ModuleMap:
    src0 = f0(phi.source, e, e_prime)
    tgt0 = f0(phi.target, e, e_prime)
    mapping = {e_prime: e}
    matrix = tuple(
        tuple(substitute_poly(entry, tgt0.ring, mapping) for entry in row)
        for row in phi.matrix
    )
    return ModuleMap(src0, tgt0, matrix, phi.degree, check=True)


def induced_map_f1(phi: ModuleMap, e: str, e_prime: str) -> ModuleMap:
    td_s = torsion_data(phi.source, e, e_prime)
    td_t = torsion_data(phi.target, e, e_prime)
    src1, tgt1 = td_s.presentation, td_t.presentation
    if not td_s.kgens:
        return ModuleMap.zero_map(src1, tgt1, phi.degree)
    lift_items = list(td_t.kgens) + list(phi.target.relations)
    mapping = {e_prime: e}
    cols = []
    for x in td_s.kgens:
        y = phi.apply_free(x)
        rem, cofs = reduce_with_expression(y, lift_items)
        if not rem.is_zero():
            raise StructuralError("image of a torsion element is not torsion")
        cols.append([substitute_poly(c, tgt1.ring, mapping) for c in cofs[: len(td_t.kgens)]])
    matrix = tuple(
        tuple(cols[j][i] for j in range(len(td_s.kgens))) for i in range(tgt1.rank)
    )
    return ModuleMap(src1, tgt1, matrix, phi.degree, check=True)


# ---------------------------------------------------------------------------
# Short exact sequences and the six-term sequence


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> B -> A -> C -> 0, stored as the inclusion and the projection."""

    incl: ModuleMap
    proj: ModuleMap

    def __post_init__(self):
        if self.incl.target != self.proj.source:
            raise StructuralError("inclusion target differs from projection source")

    def check(self) -> list[str]:
        """Exactness failures (empty when the sequence is exact)."""
        problems = []
        if not self.incl.is_mono():
            problems.append("inclusion is not injective")
        if not self.proj.is_epi():
            problems.append("projection is not surjective")
        mid = self.incl.target
        im_cols = [self.incl.column(j) for j in range(self.incl.source.rank)]
        _, ker_incl = kernel(self.proj)
        ker_cols = [ker_incl.column(j) for j in range(ker_incl.source.rank)]
        if not same_submodule(mid, im_cols, ker_cols):
            problems.append("image of the inclusion differs from the kernel of the projection")
        return problems


def same_submodule(ambient: PresentedModule, gens_a: Sequence[FreeElement], gens_b: Sequence[FreeElement]) -> bool:
    """Equality of spans inside an ambient module, via canonical bases."""
    free = ambient.free_cover
    a = groebner(list(gens_a) + list(ambient.relations), module=free)
    b = groebner(list(gens_b) + list(ambient.relations), module=free)
    return a == b


def connecting_map(ses: ShortExactSequence, e: str, e_prime: str) -> ModuleMap:
    """Connecting map F1(C) -> F0(B) of the six-term sequence.

    Sends a torsion class of C to the class of (e - e') times any preimage in
    A, pulled back into B; preimages come from deterministic normal-form
    lifting, so the matrix is reproducible.
    """
    b_mod = ses.incl.source
    a_mod = ses.incl.target
    c_mod = ses.proj.target
    td_c = torsion_data(c_mod, e, e_prime)
    f1c = td_c.presentation
    f0b = f0(b_mod, e, e_prime)
    if not td_c.kgens:
        return ModuleMap.zero_map(f1c, f0b, 1)
    d = a_mod.ring.var(e) - a_mod.ring.var(e_prime)
    fa = a_mod.free_cover
    fb = b_mod.free_cover
    lift_a = [ses.proj.apply_free(fa.gen(j)) for j in range(a_mod.rank)] + list(c_mod.relations)
    lift_b = [ses.incl.apply_free(fb.gen(j)) for j in range(b_mod.rank)] + list(a_mod.relations)
    mapping = {e_prime: e}
    cols = []
    for c in td_c.kgens:
        rem, cof = reduce_with_expression(c, lift_a)
        if not rem.is_zero():
            raise StructuralError("projection is not surjective; cannot lift torsion class")
        a_lift = fa.zero()
        for j in range(a_mod.rank):
            a_lift = a_lift + cof[j] * fa.gen(j)
        w = d * a_lift
        rem2, cof2 = reduce_with_expression(w, lift_b)
        if not rem2.is_zero():
            raise StructuralError("(e-e') times the lift does not come from the subobject")
        b_elem = fb.zero()
        for j in range(b_mod.rank):
            b_elem = b_elem + cof2[j] * fb.gen(j)
        cols.append(substitute_free(b_elem, f0b.free_cover, mapping))
    return ModuleMap.from_columns(f1c, f0b, cols, 1, check=True)


@dataclass(frozen=True)
class SixTermSequence:
    """0 -> F1(B) -> F1(A) -> F1(C) -> F0(B) -> F0(A) -> F0(C) -> 0."""

    modules: tuple  # (F1B, F1A, F1C, F0B, F0A, F0C)
    maps: tuple  # (F1 incl, F1 proj, connecting, F0 incl, F0 proj)

    def exactness_failures(self) -> list[str]:
        f1i, f1p, delta, f0i, f0p = self.maps
        problems = []
        if not f1i.is_mono():
            problems.append("F1(B) -> F1(A) not injective")
        junctions = [
            ("F1(A)", f1i, f1p),
            ("F1(C)", f1p, delta),
            ("F0(B)", delta, f0i),
            ("F0(A)", f0i, f0p),
        ]
        for name, fin, fout in junctions:
            mid = fin.target
            im_cols = [fin.column(j) for j in range(fin.source.rank)]
            _, ker_incl = kernel(fout)
            ker_cols = [ker_incl.column(j) for j in range(ker_incl.source.rank)]
            if not same_submodule(mid, im_cols, ker_cols):
                problems.append(f"exactness fails at {name}")
        if not f0p.is_epi():
            problems.append("F0(A) -> F0(C) not surjective")
        return problems


def six_term(ses: ShortExactSequence, e: str, e_prime: str) -> SixTermSequence:
    b_mod = ses.incl.source
    a_mod = ses.incl.target
    c_mod = ses.proj.target
    mods = (
        f1(b_mod, e, e_prime),
        f1(a_mod, e, e_prime),
        f1(c_mod, e, e_prime),
        f0(b_mod, e, e_prime),
        f0(a_mod, e, e_prime),
        f0(c_mod, e, e_prime),
    )
    maps = (
        induced_map_f1(ses.incl, e, e_prime),
        induced_map_f1(ses.proj, e, e_prime),
        connecting_map(ses, e, e_prime),
        induced_map_f0(ses.incl, e, e_prime),
        induced_map_f0(ses.proj, e, e_prime),
    )
    return SixTermSequence(mods, maps)


# ---------------------------------------------------------------------------
# Annihilators, cyclic submodules, covers


def annihilator(m: PresentedModule, x: FreeElement) -> tuple[GradedPoly, ...]:
    """Generators of {r : r*x = 0 in M}, as a reduced Groebner basis."""
    if x.module != m.free_cover:
        raise StructuralError("element outside the module's free cover")
    if not x.is_homogeneous:
        raise ValidationError(f"inhomogeneous element {x}")
    gens = []
    for s in syzygies([x] + list(m.relations), module=m.free_cover):
        c = s.component(0)
        if not c.is_zero():
            gens.append(c)
    return groebner(gens, module=FreeModule(m.ring, (0,))) if gens else ()


@lru_cache(maxsize=8192)
def annihilator_ideal(m: PresentedModule) -> tuple[GradedPoly, ...]:
    """Annihilator of the whole module: {r : r*M = 0}."""
    if m.rank == 0:
        return (m.ring.one(),)
    acc = None
    for i in range(m.rank):
        ann = annihilator(m, m.gen(i))
        if not ann:
            return ()
        acc = ann if acc is None else intersect_ideals(acc, ann, m.ring)
        if not acc:
            return ()
    return acc


@dataclass(frozen=True)
class CyclicSubmodule:
    module: PresentedModule
    inclusion: ModuleMap
    shift: int


def cyclic_submodule(m: PresentedModule, x: FreeElement) -> CyclicSubmodule:
    """R*x presented as R/Ann(x) with its generator in weight(x)."""
    if x.module != m.free_cover:
        raise StructuralError("element outside the module's free cover")
    if not normal_form(x, m.relation_gb()).is_zero():
        w = x.weight()
        ann = annihilator(m, x)
        cyc = PresentedModule.from_ideal(m.ring, ann, shift=w)
        incl = ModuleMap.from_columns(cyc, m, [x], 0, check=True)
        return CyclicSubmodule(cyc, incl, w)
    zero_mod = PresentedModule.zero(m.ring)
    return CyclicSubmodule(zero_mod, ModuleMap.zero_map(zero_mod, m), 0)


@dataclass(frozen=True)
class SubmoduleCover:
    """A submodule S with a finite cyclic cover: the pieces R*x_i with their
    inclusions into the ambient module, and the assembled surjection from
    their direct sum onto S."""

    sub: PresentedModule
    inclusion: ModuleMap  # S -> M
    pieces: tuple[CyclicSubmodule, ...]
    total: PresentedModule  # direct sum of the pieces
    surjection: ModuleMap  # total -> S


def submodule_generators(m: PresentedModule, elems: Sequence[FreeElement]) -> SubmoduleCover:
    for x in elems:
        if not x.is_homogeneous:
            raise ValidationError(f"inhomogeneous submodule generator {x}")
    gb = m.relation_gb()
    kept = [x for x in elems if not normal_form(x, gb).is_zero()]
    sub, incl = submodule_from_elements(m, kept)
    pieces = tuple(cyclic_submodule(m, x) for x in kept)
    if not pieces:
        zero_mod = PresentedModule.zero(m.ring)
        return SubmoduleCover(sub, incl, (), zero_mod, ModuleMap.zero_map(zero_mod, sub))
    total, _, _ = direct_sum([p.module for p in pieces])
    zero = m.ring.zero()
    one = m.ring.one()
    matrix = [[zero] * total.rank for _ in range(sub.rank)]
    for j in range(len(kept)):
        matrix[j][j] = one
    surj = ModuleMap(total, sub, matrix, 0, check=True)
    return SubmoduleCover(sub, incl, pieces, total, surj)


# ---------------------------------------------------------------------------
# Support criterion for tameness


def is_tame_support(
    m: PresentedModule,
    tame: Sequence,
    product_cap: int = 64,
    partition_cap: int = 512,
) -> bool:
    """Decide Supp(M) within the union of the tame partition subspaces.

    Equivalent to prod_P I_P lying in rad(Ann M).  Products of generators are
    tested directly when their number stays under product_cap; beyond that an
    equivalent successive-saturation sweep is used (components covered by some
    subspace are saturated away; containment holds iff nothing survives).
    """
    from .partition import partition_ideal

    tame = list(dict.fromkeys(tame))
    if not tame:
        return m.is_zero()
    for p in tame:
        if set(p.ground) != set(m.ring.variables):
            raise StructuralError(
                f"partition ground {p.ground} does not match module ring {m.ring.variables}"
            )
    if m.is_zero():
        return True
    # Antichain reduction: a partition refined by another tame one covers a
    # smaller subspace and is redundant in the union.
    keep = [p for p in tame if not any(q != p and q.refines(p) for q in tame)]
    if any(p.is_discrete() for p in keep):
        return True
    ann = annihilator_ideal(m)
    if ann and ideal_contains_one(ann, m.ring):
        return True
    ideals = [partition_ideal(p, m.ring) for p in keep]
    if len(keep) > partition_cap:
        raise ResourceCapError(
            f"{len(keep)} tame subspaces exceed the partition cap {partition_cap}"
        )
    # Quick win: support inside a single subspace.
    for gens in ideals:
        if all(radical_member(g, ann) for g in gens):
            return True
    if len(keep) == 1:
        return False
    count = 1
    for gens in ideals:
        count *= max(len(gens), 1)
    if count <= product_cap:
        for combo in itertools.product(*[gens for gens in ideals if gens]):
            g = m.ring.one()
            for f in combo:
                g = g * f
            if not radical_member(g, ann):
                return False
        return True
    # Successive saturation, finest partitions first.
    order = sorted(range(len(keep)), key=lambda i: (-keep[i].block_count, keep[i].blocks))
    current = ann
    for i in order:
        current = saturate_by_ideal(current, ideals[i], m.ring)
        if ideal_contains_one(current, m.ring):
            return True
    return False
