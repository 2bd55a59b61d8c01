"""Tameness certificates and the certificate transformer.

A certificate is a derivation tree witnessing membership in the Serre
subcategory generated by shifted partition modules: Gen leaves are the
generators, Sub/Quot/Ext nodes carry explicit module-map witnesses, and a
distinguished Zero leaf certifies the zero module.  verify() checks every
witness locally; transform() compiles a certificate over the split edge set
into certificates for both functor outputs over the contracted edge set,
recursing along a measure (degree, type level) that decreases lexicographically
on every call.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ._core import impl as K
from .errors import CertificateError, StructuralError, ValidationError
from .exactalg import EdgeRing, FreeElement, normal_form
from .gradedmod import (
    ModuleMap,
    PresentedModule,
    ShortExactSequence,
    _monomials,
    cokernel,
    connecting_map,
    direct_sum,
    f0,
    f1,
    image,
    induced_map_f0,
    induced_map_f1,
    is_tame_support,
    kernel,
    pullback,
    same_submodule,
    submodule_from_elements,
)
from .graphsplit import SplitResult, TamenessPredicate, tame_partitions
from .partition import Partition, merge_edges, partition_module, related


class Certificate:
    """Base node; root is the presented module the node certifies."""

    kind = "abstract"
    root: PresentedModule

    def children(self) -> tuple["Certificate", ...]:
        return ()

    def __repr__(self):
        return f"<{self.kind} certificate, level {type_level(self)}, root rank {self.root.rank}>"


class GenNode(Certificate):
    kind = "gen"

    def __init__(self, partition: Partition, shift: int = 0):
        self.partition = partition
        self.shift = int(shift)
        self.root = partition_module(partition).shift(self.shift)

    def __eq__(self, other):
        return (
            isinstance(other, GenNode)
            and self.partition == other.partition
            and self.shift == other.shift
        )

    def __hash__(self):
        return hash((self.kind, self.partition, self.shift))


class ZeroNode(Certificate):
    """Distinguished leaf for the zero module, valid under every predicate."""

    kind = "zero"

    def __init__(self, ring: EdgeRing):
        self.ring = ring
        self.root = PresentedModule.zero(ring)

    def __eq__(self, other):
        return isinstance(other, ZeroNode) and self.ring == other.ring

    def __hash__(self):
        return hash((self.kind, self.ring))


class SubNode(Certificate):
    kind = "sub"

    def __init__(self, parent: Certificate, witness: ModuleMap):
        if not witness.target.same_presentation(parent.root):
            raise StructuralError("sub witness does not land in the parent's root")
        self.parent = parent
        self.witness = witness
        self.root = witness.source

    def children(self):
        return (self.parent,)

    def __eq__(self, other):
        return (
            isinstance(other, SubNode)
            and self.parent == other.parent
            and self.witness == other.witness
        )

    def __hash__(self):
        return hash((self.kind, self.parent, self.witness))


class QuotNode(Certificate):
    kind = "quot"

    def __init__(self, parent: Certificate, witness: ModuleMap):
        if not witness.source.same_presentation(parent.root):
            raise StructuralError("quot witness does not start at the parent's root")
        self.parent = parent
        self.witness = witness
        self.root = witness.target

    def children(self):
        return (self.parent,)

    def __eq__(self, other):
        return (
            isinstance(other, QuotNode)
            and self.parent == other.parent
            and self.witness == other.witness
        )

    def __hash__(self):
        return hash((self.kind, self.parent, self.witness))


class ExtNode(Certificate):
    """Extension 0 -> left -> root -> right -> 0 with both witness maps."""

    kind = "ext"

    def __init__(self, left: Certificate, right: Certificate, injection: ModuleMap, projection: ModuleMap):
        if not injection.source.same_presentation(left.root):
            raise StructuralError("extension injection does not start at the left root")
        if not projection.target.same_presentation(right.root):
            raise StructuralError("extension projection does not end at the right root")
        if not projection.source.same_presentation(injection.target):
            raise StructuralError("extension witnesses disagree on the middle module")
        self.left = left
        self.right = right
        self.injection = injection
        self.projection = projection
        self.root = injection.target

    def children(self):
        return (self.left, self.right)

    def __eq__(self, other):
        return (
            isinstance(other, ExtNode)
            and self.left == other.left
            and self.right == other.right
            and self.injection == other.injection
            and self.projection == other.projection
        )

    def __hash__(self):
        return hash((self.kind, self.left, self.right, self.injection, self.projection))


def zero_certificate(ring: EdgeRing) -> ZeroNode:
    return ZeroNode(ring)


def type_level(c: Certificate) -> int:
    """0 for leaves; 1 + the maximum over children otherwise."""
    if isinstance(c, (GenNode, ZeroNode)):
        return 0
    return 1 + max(type_level(ch) for ch in c.children())


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    path: tuple[str, ...] = ()
    reason: str | None = None

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "pass"
        where = "/".join(self.path) if self.path else "<root>"
        return f"fail at {where}: {self.reason}"


def _fail(path, reason):
    return VerifyResult(False, tuple(path), reason)


def verify(c: Certificate, pred: TamenessPredicate, _path: tuple = ()) -> VerifyResult:
    """Step-local verification of every node.

    Gen needs a tame partition; Sub needs an injective witness; Quot a
    surjective one; Ext an exact pair.  Structural mismatches raise
    StructuralError (they are certificate construction bugs, not mathematical
    failures)."""
    if isinstance(c, ZeroNode):
        return VerifyResult(True)
    if isinstance(c, GenNode):
        if not pred(c.partition):
            return _fail(_path, f"partition {c.partition} is not tame")
        return VerifyResult(True)
    if isinstance(c, SubNode):
        inner = verify(c.parent, pred, _path + ("parent",))
        if not inner:
            return inner
        if not c.witness.is_mono():
            return _fail(_path, "sub witness is not injective")
        return VerifyResult(True)
    if isinstance(c, QuotNode):
        inner = verify(c.parent, pred, _path + ("parent",))
        if not inner:
            return inner
        if not c.witness.is_epi():
            return _fail(_path, "quot witness is not surjective")
        return VerifyResult(True)
    if isinstance(c, ExtNode):
        inner = verify(c.left, pred, _path + ("left",))
        if not inner:
            return inner
        inner = verify(c.right, pred, _path + ("right",))
        if not inner:
            return inner
        if not c.injection.is_mono():
            return _fail(_path, "extension injection is not injective")
        if not c.projection.is_epi():
            return _fail(_path, "extension projection is not surjective")
        mid = c.injection.target
        im_cols = [c.injection.column(j) for j in range(c.injection.source.rank)]
        _, ker_incl = kernel(c.projection)
        ker_cols = [ker_incl.column(j) for j in range(ker_incl.source.rank)]
        if not same_submodule(mid, im_cols, ker_cols):
            return _fail(_path, "extension is not exact in the middle")
        return VerifyResult(True)
    raise StructuralError(f"unknown certificate node {c!r}")


# ---------------------------------------------------------------------------
# The transformer


def transform(
    c: Certificate,
    e: str,
    e_prime: str,
    degree: int,
    pred_split: TamenessPredicate | None = None,
    pred_base: TamenessPredicate | None = None,
    trace: list | None = None,
) -> Certificate:
    """Certificate for the degree-0 or degree-1 functor output of c's root.

    The result's root has the same presentation as f0/f1 of the input root and
    verifies under the base predicate whenever the input verifies under the
    split predicate and the pair satisfies merge closure.  When trace is a
    list, every recursive call appends (depth, degree, type_level); the pair
    (degree, level) decreases lexicographically along each recursion edge.
    """
    if degree not in (0, 1):
        raise ValidationError("degree must be 0 or 1")
    if pred_split is not None:
        res = verify(c, pred_split)
        if not res:
            raise CertificateError(f"input certificate does not verify: {res}", res)
    out = _transform(c, e, e_prime, degree, trace, 0)
    if pred_base is not None:
        res = verify(out, pred_base)
        if not res:
            raise CertificateError(f"transformed certificate does not verify: {res}", res)
    return out


def _base_ring_for(c: Certificate, e: str, e_prime: str) -> EdgeRing:
    ring = c.root.ring
    return EdgeRing(tuple(v for v in ring.variables if v != e_prime))


def _zero_cert_for(presentation: PresentedModule) -> Certificate:
    """Certificate for a zero module given by a possibly non-empty presentation."""
    if presentation.rank == 0:
        return ZeroNode(presentation.ring)
    zn = ZeroNode(presentation.ring)
    return QuotNode(zn, ModuleMap.zero_map(zn.root, presentation))


def _transform(c, e, e_prime, i, trace, depth) -> Certificate:
    if trace is not None:
        trace.append((depth, i, type_level(c)))
    if isinstance(c, ZeroNode):
        return ZeroNode(_base_ring_for(c, e, e_prime))
    if isinstance(c, GenNode):
        merged = merge_edges(c.partition, e, e_prime)
        if i == 0 or related(c.partition, e, e_prime):
            return GenNode(merged, c.shift)
        return ZeroNode(_base_ring_for(c, e, e_prime))
    if isinstance(c, QuotNode):
        return _via_quot(c.parent, c.witness, e, e_prime, i, trace, depth)
    if isinstance(c, ExtNode):
        return _via_ext(c.left, c.right, c.injection, c.projection, e, e_prime, i, trace, depth)
    if isinstance(c, SubNode):
        return _via_sub(c, e, e_prime, i, trace, depth)
    raise StructuralError(f"unknown certificate node {c!r}")


def _via_quot(parent: Certificate, pi: ModuleMap, e, e_prime, i, trace, depth) -> Certificate:
    # parent certifies B; pi : B ->> C.
    if i == 0:
        # F0 is right exact, so F0(C) is a quotient of F0(B) directly.
        cb0 = _transform(parent, e, e_prime, 0, trace, depth + 1)
        return QuotNode(cb0, induced_map_f0(pi, e, e_prime))
    # F1(B) -> F1(C) -> F0(K) exact: F1(C) is an extension of a quotient of
    # F1(B) by a subobject of F0(K), where K = ker(pi) is itself a subobject
    # of B.  The recursion drops to (1, level-1) and (0, level).
    k_mod, kappa = kernel(pi)
    cb1 = _transform(parent, e, e_prime, 1, trace, depth + 1)
    ck0 = _transform(SubNode(parent, kappa), e, e_prime, 0, trace, depth + 1)
    pi1 = induced_map_f1(pi, e, e_prime)
    img = image(pi1)
    q2_mod, q2 = cokernel(img.inclusion)
    delta = connecting_map(ShortExactSequence(kappa, pi), e, e_prime)
    dbar = ModuleMap(q2_mod, delta.target, delta.matrix, delta.degree, check=True)
    return ExtNode(QuotNode(cb1, img.projection), SubNode(ck0, dbar), img.inclusion, q2)


def _via_ext(left: Certificate, right: Certificate, inj: ModuleMap, proj: ModuleMap, e, e_prime, i, trace, depth) -> Certificate:
    if i == 0:
        cl0 = _transform(left, e, e_prime, 0, trace, depth + 1)
        cr0 = _transform(right, e, e_prime, 0, trace, depth + 1)
        inj0 = induced_map_f0(inj, e, e_prime)
        proj0 = induced_map_f0(proj, e, e_prime)
        img = image(inj0)
        return ExtNode(QuotNode(cl0, img.projection), cr0, img.inclusion, proj0)
    cl1 = _transform(left, e, e_prime, 1, trace, depth + 1)
    cr1 = _transform(right, e, e_prime, 1, trace, depth + 1)
    inj1 = induced_map_f1(inj, e, e_prime)
    proj1 = induced_map_f1(proj, e, e_prime)
    q_mod, q = cokernel(inj1)
    pbar = ModuleMap(q_mod, proj1.target, proj1.matrix, proj1.degree, check=True)
    return ExtNode(cl1, SubNode(cr1, pbar), inj1, q)


def _via_sub(c: SubNode, e, e_prime, i, trace, depth) -> Certificate:
    parent = c.parent
    iota = c.witness
    if isinstance(parent, ZeroNode):
        # a subobject of 0 is 0; keep the functor's actual presentation
        return _zero_cert_for(f0(c.root, e, e_prime) if i == 0 else f1(c.root, e, e_prime))
    if isinstance(parent, GenNode):
        return _sub_of_gen(c, e, e_prime, i, trace, depth)
    if isinstance(parent, SubNode):
        # S <= B <= B': recurse on the composite inclusion into B'
        composite = parent.witness.compose(iota)
        return _transform(SubNode(parent.parent, composite), e, e_prime, i, trace, depth + 1)
    if isinstance(parent, QuotNode):
        # pull the subobject back along the surjection to a subobject of the
        # smaller-type module, then treat S as a quotient of the pullback
        pb = pullback(iota, parent.witness)
        inner = SubNode(parent.parent, pb.to_second)
        return _via_quot(inner, pb.to_first, e, e_prime, i, trace, depth)
    if isinstance(parent, ExtNode):
        # intersect with the left part and project to the right part:
        # 0 -> S&L -> S -> S/(S&L) -> 0 with S&L <= L and S/(S&L) <= R
        pb = pullback(iota, parent.injection)
        p_to_s = pb.to_first
        p_to_l = pb.to_second
        sp_mod, q = cokernel(p_to_s)
        through = parent.projection.compose(iota)
        jbar = ModuleMap(sp_mod, through.target, through.matrix, through.degree, check=True)
        new_left = SubNode(parent.left, p_to_l)
        new_right = SubNode(parent.right, jbar)
        return _via_ext(new_left, new_right, p_to_s, q, e, e_prime, i, trace, depth)
    raise StructuralError(f"unknown parent node {parent!r}")


def _direct_sum_cert(c1: Certificate, c2: Certificate) -> ExtNode:
    total, injs, projs = direct_sum([c1.root, c2.root])
    return ExtNode(c1, c2, injs[0], projs[1])


def _sub_of_gen(c: SubNode, e, e_prime, i, trace, depth) -> Certificate:
    parent: GenNode = c.parent
    iota = c.witness
    s_mod = c.root
    if i == 1:
        # F1 is left exact: F1(S) includes into F1(Z[P]), which the Gen rule
        # already handles.
        f1s = f1(s_mod, e, e_prime)
        if f1s.rank == 0:
            return ZeroNode(f1s.ring)
        c1 = _transform(parent, e, e_prime, 1, trace, depth + 1)
        if isinstance(c1, ZeroNode):
            raise CertificateError(
                "nonzero torsion inside a torsion-free generator; "
                "the input certificate cannot be valid"
            )
        w1 = induced_map_f1(iota, e, e_prime)
        return SubNode(c1, w1)
    # i == 0: Noetherian cyclic decomposition.  Each generator x_j of S spans
    # a cyclic submodule isomorphic to a shift of Z[P], so F0(S) is a quotient
    # of a direct sum of shifted merged partition modules.
    merged = merge_edges(parent.partition, e, e_prime)
    gb = parent.root.relation_gb()
    kept = [
        (j, iota.column(j))
        for j in range(s_mod.rank)
        if not normal_form(iota.column(j), gb).is_zero()
    ]
    f0s = f0(s_mod, e, e_prime)
    if not kept:
        return _zero_cert_for(f0s)
    pieces = [GenNode(merged, s_mod.gen_weights[j]) for j, _ in kept]
    dcert = pieces[0]
    for nxt in pieces[1:]:
        dcert = _direct_sum_cert(dcert, nxt)
    zero = f0s.ring.zero()
    one = f0s.ring.one()
    matrix = [[zero] * dcert.root.rank for _ in range(f0s.rank)]
    for t, (j, _) in enumerate(kept):
        matrix[j][t] = one
    theta = ModuleMap(dcert.root, f0s, matrix, 0, check=True)
    return QuotNode(dcert, theta)


# ---------------------------------------------------------------------------
# Random certificates and the property harness


def random_homogeneous_element(rng: random.Random, m: PresentedModule, weight: int) -> FreeElement:
    """Sparse random element of the free cover, homogeneous of the given weight."""
    free = m.free_cover
    raw = []
    for pos, w in enumerate(m.gen_weights):
        d = weight - w
        if d < 0:
            continue
        for expo in _monomials(d, m.ring.nvars):
            if rng.random() < 0.5:
                coeff = rng.choice((-2, -1, 1, 2))
                raw.append((pos, expo, coeff, 1))
    return FreeElement(free, K.canon(raw, *free.order()))


def _random_elements(rng, m, count, extra_weight=2):
    if m.rank == 0:
        return []
    base = min(m.gen_weights)
    return [
        random_homogeneous_element(rng, m, base + rng.randint(0, extra_weight))
        for _ in range(count)
    ]


def random_certificate(
    rng: random.Random,
    tame_list: Sequence[Partition],
    max_level: int,
    max_shift: int = 1,
) -> Certificate:
    """Random certificate over the common ground set of tame_list.

    Bounded so the Groebner work stays interactive: levels <= max_level,
    witness elements of weight at most min generator weight + 2.
    """
    if not tame_list:
        raise ValidationError("need at least one tame partition to seed certificates")
    ring = partition_module(tame_list[0]).ring

    def build(level: int) -> Certificate:
        if level <= 0:
            if rng.random() < 0.08:
                return ZeroNode(ring)
            return GenNode(rng.choice(list(tame_list)), rng.randint(0, max_shift))
        kind = rng.choice(("sub", "quot", "ext"))
        if kind == "ext":
            return _direct_sum_cert(build(level - 1), build(level - 1))
        parent = build(level - 1)
        m = parent.root
        if m.rank == 0:
            return parent
        elems = _random_elements(rng, m, rng.randint(1, 2))
        sub, incl = submodule_from_elements(m, elems)
        if kind == "sub":
            return SubNode(parent, incl)
        _, proj = cokernel(incl)
        return QuotNode(parent, proj)

    return build(rng.randint(0, max_level))


PROPERTY_CYCLE = (("O", 0), ("O", 1), ("Q", 0), ("Q", 1), ("S", 0), ("S", 1), ("E", 0), ("E", 1))


@dataclass(frozen=True)
class PropertyReport:
    """Verdict of one harness sample against one property clause."""

    prop: str
    degree: int
    sample: int
    description: str
    passed: bool
    counterexample: str | None = None

    def to_json(self) -> dict:
        return {
            "property": self.prop,
            "degree": self.degree,
            "sample": self.sample,
            "description": self.description,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


def _harness_sample(args) -> PropertyReport:
    idx, seed, split, pred_split, pred_base, max_level = args
    rng = random.Random(f"{seed}:{idx}")
    prop, deg = PROPERTY_CYCLE[idx % len(PROPERTY_CYCLE)]
    tame_split = tame_partitions(pred_split, split.split_graph)
    tame_base = tame_partitions(pred_base, split.base_graph)
    if not tame_split:
        return PropertyReport(prop, deg, idx, "no tame partitions on the split graph", True)
    cert = random_certificate(rng, tame_split, max_level)
    m = cert.root
    if prop == "Q":
        elems = _random_elements(rng, m, 1)
        if m.rank:
            _, incl = submodule_from_elements(m, elems)
            m = cokernel(incl)[0]
        desc = "quotient of a certified module"
    elif prop == "S":
        elems = _random_elements(rng, m, 1)
        if m.rank:
            m, _ = submodule_from_elements(m, elems)
        desc = "submodule of a certified module"
    elif prop == "E":
        other = random_certificate(rng, tame_split, max_level)
        m = direct_sum([m, other.root])[0]
        desc = "extension of two certified modules"
    else:
        desc = "certified module"
    target = f0(m, split.e, split.e_prime) if deg == 0 else f1(m, split.e, split.e_prime)
    ok = is_tame_support(target, tame_base)
    counter = None if ok else f"{prop}({deg}) sample {idx}: {target!r}"
    return PropertyReport(prop, deg, idx, f"{prop}({deg}): {desc}", ok, counter)


def harness(
    split: SplitResult,
    pred_split: TamenessPredicate,
    pred_base: TamenessPredicate,
    samples: int,
    seed: int,
    max_level: int = 2,
    jobs: int = 1,
) -> tuple[PropertyReport, ...]:
    """Randomized check of the O/Q/S/E property clauses on functor outputs.

    Deterministic for a fixed seed regardless of jobs: each sample derives its
    own RNG stream from (seed, index) and results are merged in index order.
    """
    tasks = [(i, seed, split, pred_split, pred_base, max_level) for i in range(samples)]
    if jobs <= 1:
        results = [_harness_sample(t) for t in tasks]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_harness_sample, tasks))
    return tuple(sorted(results, key=lambda r: r.sample))


# ---------------------------------------------------------------------------
# End-to-end transform corpus (soundness sweep over random certificates)


def transform_roundtrip(
    cert: Certificate,
    e: str,
    e_prime: str,
    pred_base: TamenessPredicate,
    tame_base: Sequence[Partition],
) -> dict:
    """Transform one certificate in both degrees and record every check:
    output verification, root-presentation agreement with the functor, and the
    support oracle on both outputs."""
    out = {"level": type_level(cert)}
    for i in (0, 1):
        res = transform(cert, e, e_prime, i)
        ver = verify(res, pred_base)
        functor = f0(cert.root, e, e_prime) if i == 0 else f1(cert.root, e, e_prime)
        out[f"verified_{i}"] = bool(ver)
        out[f"root_matches_{i}"] = res.root.same_presentation(functor)
        out[f"support_tame_{i}"] = is_tame_support(res.root, list(tame_base))
    out["ok"] = all(v for k, v in out.items() if k != "level")
    return out


def _corpus_sample(args) -> dict:
    idx, seed, split, pred, max_level = args
    rng = random.Random(f"{seed}:corpus:{idx}")
    tame_split = tame_partitions(pred, split.split_graph)
    tame_base = tame_partitions(pred, split.base_graph)
    cert = random_certificate(rng, tame_split, max_level)
    row = {"sample": idx, "predicate": pred.describe()}
    ver_in = verify(cert, pred)
    row["input_verified"] = bool(ver_in)
    row["input_support_tame"] = is_tame_support(cert.root, list(tame_split))
    row.update(transform_roundtrip(cert, split.e, split.e_prime, pred, tame_base))
    row["ok"] = row["ok"] and row["input_verified"] and row["input_support_tame"]
    return row


def transform_corpus(
    split: SplitResult,
    pred: TamenessPredicate,
    samples: int,
    seed: int,
    max_level: int = 3,
    jobs: int = 1,
) -> list[dict]:
    """Seeded random-certificate corpus run end to end through the transformer.

    Row order and content are deterministic for a fixed seed regardless of the
    worker count."""
    tasks = [(i, seed, split, pred, max_level) for i in range(samples)]
    if jobs <= 1:
        rows = [_corpus_sample(t) for t in tasks]
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_corpus_sample, tasks))
    return sorted(rows, key=lambda r: r["sample"])
