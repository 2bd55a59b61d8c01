"""Workspace JSON round-trips and referential integrity."""

import random
from fractions import Fraction

import pytest

from tamemod.errors import ValidationError
from tamemod.exactalg import EdgeRing, FreeModule
from tamemod.gradedmod import ModuleMap, PresentedModule, cokernel, submodule_from_elements
from tamemod.graphsplit import AlwaysTame, EdgeGraph, MaxBlockCount, tame_partitions, split_edge
from tamemod.partition import make_partition, partition_module
from tamemod.serre import GenNode, SubNode, ZeroNode, random_certificate, _direct_sum_cert
from tamemod.workspace import (
    Workspace,
    module_from_json,
    module_to_json,
    partition_from_json,
    partition_to_json,
    poly_from_json,
    poly_to_json,
)


def test_poly_roundtrip_exact():
    ring = EdgeRing(("x", "y"))
    p = ring.poly({(2, 0): Fraction(-3, 7), (0, 1): 5})
    assert poly_from_json(ring, poly_to_json(p)) == p


def test_module_roundtrip(p_related):
    m = partition_module(p_related).shift(2)
    assert module_from_json(module_to_json(m)) == m


def test_partition_roundtrip(p_related):
    assert partition_from_json(partition_to_json(p_related)) == p_related


def test_workspace_roundtrip_with_certificates(split_abe):
    pred = MaxBlockCount(2)
    tame = tame_partitions(pred, split_abe.split_graph)
    rng = random.Random("ws-roundtrip")
    ws = Workspace(graph=split_abe.base_graph, split="e", predicate=pred)
    for k in range(3):
        ws.intern_certificate(f"c{k}", random_certificate(rng, tame, max_level=2))
    data = ws.to_json()
    back = Workspace.from_json(data)
    assert back.graph == ws.graph
    assert back.split == ws.split
    assert back.predicate == pred
    assert back.partitions == ws.partitions
    assert back.modules == ws.modules
    assert back.maps == ws.maps
    assert back.certificates == ws.certificates
    # and serialization is stable
    assert back.to_json() == data


def test_workspace_file_roundtrip(tmp_path, p_related):
    ws = Workspace(predicate=AlwaysTame())
    ws.intern_certificate("g", GenNode(p_related, 1))
    path = tmp_path / "ws.json"
    ws.dump(str(path))
    again = Workspace.load(str(path))
    assert again.certificates["g"] == GenNode(p_related, 1)


def test_unknown_module_reference():
    data = {
        "modules": {},
        "maps": {
            "w0": {"source": "nope", "target": "nope", "degree": 0, "matrix": []},
        },
    }
    with pytest.raises(ValidationError, match="nope"):
        Workspace.from_json(data)


def test_unknown_partition_reference():
    data = {"certificates": {"c": {"kind": "gen", "partition": "missing", "shift": 0}}}
    with pytest.raises(ValidationError, match="missing"):
        Workspace.from_json(data)


def test_unknown_certificate_id(p_related):
    ws = Workspace()
    ws.intern_certificate("g", GenNode(p_related, 0))
    with pytest.raises(ValidationError, match="zz"):
        ws.certificate("zz")


def test_bad_json_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ValidationError):
        Workspace.load(str(path))


def test_malformed_relation_reported_with_module_id():
    ring = ["x"]
    data = {
        "modules": {
            "Mbad": {
                "ring": ring,
                "gen_weights": [0],
                "relations": [[{"c": "1", "m": {"x": 1}, "g": 5}]],
            }
        }
    }
    with pytest.raises(ValidationError, match="Mbad"):
        Workspace.from_json(data)


def test_shipped_workspaces_load_and_verify():
    from tamemod.serre import verify

    for name, cid in [
        ("workspaces/gen_related.json", "c_related"),
        ("workspaces/gen_unrelated.json", "c_unrelated"),
        ("workspaces/sub_ideal.json", "c_ideal"),
    ]:
        ws = Workspace.load(name)
        cert = ws.certificate(cid)
        assert verify(cert, ws.predicate), name
