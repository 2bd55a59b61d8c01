"""JSON workspace format: graphs, predicates, partitions, modules, maps, and
certificates, cross-referenced by id.

Rationals are serialized as "num/den" strings (plain "num" when the
denominator is 1) so round-trips stay exact; terms are emitted in the
canonical monomial order, making serialization deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ._core import impl as K
from .errors import ValidationError
from .exactalg import EdgeRing, FreeElement, FreeModule, GradedPoly
from .gradedmod import ModuleMap, PresentedModule
from .graphsplit import EdgeGraph, TamenessPredicate, predicate_from_config
from .partition import Partition, make_partition
from .serre import Certificate, ExtNode, GenNode, QuotNode, SubNode, ZeroNode


def _coeff_str(num: int, den: int) -> str:
    return str(num) if den == 1 else f"{num}/{den}"


def _coeff_parse(s) -> tuple[int, int]:
    frac = Fraction(s)
    return frac.numerator, frac.denominator


def _term_to_json(ring: EdgeRing, pos, expo, num, den, with_gen: bool):
    mono = {v: e for v, e in zip(ring.variables, expo) if e}
    out = {"c": _coeff_str(num, den), "m": mono}
    if with_gen:
        out["g"] = pos
    return out


def _term_from_json(ring: EdgeRing, data, with_gen: bool):
    num, den = _coeff_parse(data["c"])
    expo = [0] * ring.nvars
    for v, e in data.get("m", {}).items():
        expo[ring.index(v)] = int(e)
    pos = int(data.get("g", 0)) if with_gen else 0
    return (pos, tuple(expo), num, den)


def poly_to_json(p: GradedPoly) -> list:
    return [_term_to_json(p.ring, *t, with_gen=False) for t in p.terms]


def poly_from_json(ring: EdgeRing, data) -> GradedPoly:
    raw = [_term_from_json(ring, t, with_gen=False) for t in data]
    return GradedPoly(ring, K.canon(raw, (0,), 0, 0))


def free_to_json(x: FreeElement) -> list:
    return [_term_to_json(x.ring, *t, with_gen=True) for t in x.terms]


def free_from_json(module: FreeModule, data) -> FreeElement:
    raw = []
    for t in data:
        term = _term_from_json(module.ring, t, with_gen=True)
        if not 0 <= term[0] < module.rank:
            raise ValidationError(f"generator index {term[0]} out of range")
        raw.append(term)
    return FreeElement(module, K.canon(raw, *module.order()))


def module_to_json(m: PresentedModule) -> dict:
    return {
        "ring": list(m.ring.variables),
        "gen_weights": list(m.gen_weights),
        "relations": [free_to_json(r) for r in m.relations],
    }


def module_from_json(data) -> PresentedModule:
    ring = EdgeRing(tuple(data["ring"]))
    weights = tuple(int(w) for w in data["gen_weights"])
    free = FreeModule(ring, weights)
    rels = [free_from_json(free, r) for r in data.get("relations", [])]
    return PresentedModule(ring, weights, rels)


def partition_to_json(p: Partition) -> dict:
    return {"ground": list(p.ground), "blocks": [list(b) for b in p.blocks]}


def partition_from_json(data) -> Partition:
    return make_partition(data["ground"], data["blocks"])


def map_to_json(phi: ModuleMap, module_ids: dict) -> dict:
    return {
        "source": module_ids[phi.source],
        "target": module_ids[phi.target],
        "degree": phi.degree,
        "matrix": [[poly_to_json(entry) for entry in row] for row in phi.matrix],
    }


def map_from_json(data, modules: dict, map_id: str) -> ModuleMap:
    for key in ("source", "target"):
        if data[key] not in modules:
            raise ValidationError(f"map {map_id!r} references unknown module {data[key]!r}")
    source = modules[data["source"]]
    target = modules[data["target"]]
    matrix = [
        [poly_from_json(target.ring, entry) for entry in row] for row in data["matrix"]
    ]
    return ModuleMap(source, target, matrix, int(data.get("degree", 0)), check=True)


def cert_to_json(cert: Certificate, partition_ids: dict, map_ids: dict) -> dict:
    if isinstance(cert, GenNode):
        return {
            "kind": "gen",
            "partition": partition_ids[cert.partition],
            "shift": cert.shift,
        }
    if isinstance(cert, ZeroNode):
        return {"kind": "zero", "ring": list(cert.ring.variables)}
    if isinstance(cert, SubNode):
        return {
            "kind": "sub",
            "parent": cert_to_json(cert.parent, partition_ids, map_ids),
            "witness": map_ids[cert.witness],
        }
    if isinstance(cert, QuotNode):
        return {
            "kind": "quot",
            "parent": cert_to_json(cert.parent, partition_ids, map_ids),
            "witness": map_ids[cert.witness],
        }
    if isinstance(cert, ExtNode):
        return {
            "kind": "ext",
            "left": cert_to_json(cert.left, partition_ids, map_ids),
            "right": cert_to_json(cert.right, partition_ids, map_ids),
            "injection": map_ids[cert.injection],
            "projection": map_ids[cert.projection],
        }
    raise ValidationError(f"cannot serialize certificate node {cert!r}")


def cert_from_json(data, partitions: dict, maps: dict, cert_id: str) -> Certificate:
    kind = data.get("kind")
    if kind == "gen":
        pid = data["partition"]
        if pid not in partitions:
            raise ValidationError(f"certificate {cert_id!r} references unknown partition {pid!r}")
        return GenNode(partitions[pid], int(data.get("shift", 0)))
    if kind == "zero":
        return ZeroNode(EdgeRing(tuple(data["ring"])))
    if kind in ("sub", "quot"):
        wid = data["witness"]
        if wid not in maps:
            raise ValidationError(f"certificate {cert_id!r} references unknown map {wid!r}")
        parent = cert_from_json(data["parent"], partitions, maps, cert_id)
        node = SubNode if kind == "sub" else QuotNode
        return node(parent, maps[wid])
    if kind == "ext":
        for key in ("injection", "projection"):
            if data[key] not in maps:
                raise ValidationError(
                    f"certificate {cert_id!r} references unknown map {data[key]!r}"
                )
        left = cert_from_json(data["left"], partitions, maps, cert_id)
        right = cert_from_json(data["right"], partitions, maps, cert_id)
        return ExtNode(left, right, maps[data["injection"]], maps[data["projection"]])
    raise ValidationError(f"certificate {cert_id!r} has unknown kind {kind!r}")


@dataclass
class Workspace:
    """In-memory view of a workspace file."""

    graph: EdgeGraph | None = None
    split: str | None = None
    predicate: TamenessPredicate | None = None
    partitions: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)

    # -- access with validation ----------------------------------------

    def module(self, mid: str) -> PresentedModule:
        if mid not in self.modules:
            raise ValidationError(f"unknown module id {mid!r}")
        return self.modules[mid]

    def certificate(self, cid: str) -> Certificate:
        if cid not in self.certificates:
            raise ValidationError(f"unknown certificate id {cid!r}")
        return self.certificates[cid]

    # -- building -------------------------------------------------------

    def intern_certificate(self, cid: str, cert: Certificate):
        """Add a certificate, interning its partitions, modules and maps."""
        self.certificates[cid] = cert
        self._intern_nodes(cert)

    def _intern_nodes(self, cert: Certificate):
        if isinstance(cert, GenNode):
            self._intern_partition(cert.partition)
        elif isinstance(cert, (SubNode, QuotNode)):
            self._intern_map(cert.witness)
            self._intern_nodes(cert.parent)
        elif isinstance(cert, ExtNode):
            self._intern_map(cert.injection)
            self._intern_map(cert.projection)
            self._intern_nodes(cert.left)
            self._intern_nodes(cert.right)

    def _intern_partition(self, p: Partition):
        if p not in self.partitions.values():
            self.partitions[f"P{len(self.partitions)}"] = p

    def _intern_module(self, m: PresentedModule) -> None:
        if m not in self.modules.values():
            self.modules[f"M{len(self.modules)}"] = m

    def _intern_map(self, phi: ModuleMap) -> None:
        self._intern_module(phi.source)
        self._intern_module(phi.target)
        if phi not in self.maps.values():
            self.maps[f"w{len(self.maps)}"] = phi

    # -- (de)serialization ----------------------------------------------

    def to_json(self) -> dict:
        out: dict = {}
        if self.graph is not None:
            out["graph"] = list(self.graph.edges)
        if self.split is not None:
            out["split"] = self.split
        if self.predicate is not None:
            out["predicate"] = {"name": self.predicate.name, **self.predicate.params()}
        out["partitions"] = {k: partition_to_json(p) for k, p in self.partitions.items()}
        out["modules"] = {k: module_to_json(m) for k, m in self.modules.items()}
        module_ids = {m: k for k, m in self.modules.items()}
        out["maps"] = {k: map_to_json(f, module_ids) for k, f in self.maps.items()}
        partition_ids = {p: k for k, p in self.partitions.items()}
        map_ids = {f: k for k, f in self.maps.items()}
        out["certificates"] = {
            k: cert_to_json(c, partition_ids, map_ids) for k, c in self.certificates.items()
        }
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Workspace":
        ws = cls()
        if "graph" in data:
            ws.graph = EdgeGraph(tuple(data["graph"]))
        ws.split = data.get("split")
        if "predicate" in data:
            ws.predicate = predicate_from_config(data["predicate"])
        for k, p in data.get("partitions", {}).items():
            ws.partitions[k] = partition_from_json(p)
        for k, m in data.get("modules", {}).items():
            try:
                ws.modules[k] = module_from_json(m)
            except ValidationError as exc:
                raise ValidationError(f"module {k!r}: {exc}") from exc
        for k, f in data.get("maps", {}).items():
            ws.maps[k] = map_from_json(f, ws.modules, k)
        for k, c in data.get("certificates", {}).items():
            ws.certificates[k] = cert_from_json(c, ws.partitions, ws.maps, k)
        return ws

    def dump(self, path: str):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path: str) -> "Workspace":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"not valid JSON: {exc}") from exc
        return cls.from_json(data)
