import pytest

from tamemod.exactalg import EdgeRing
from tamemod.graphsplit import EdgeGraph, split_edge
from tamemod.partition import make_partition


@pytest.fixture
def ring_xy():
    return EdgeRing(("x", "y"))


@pytest.fixture
def split_abe():
    """Base graph {a, b, e} with e split into e, e'."""
    return split_edge(EdgeGraph(("a", "b", "e")), "e")


@pytest.fixture
def p_related():
    return make_partition(["a", "e", "e'"], [["e", "e'"], ["a"]])


@pytest.fixture
def p_unrelated():
    return make_partition(["a", "e", "e'"], [["e"], ["e'"], ["a"]])
