import networkx as nx
import pytest

from utils.certificates import PatternSpec, verify_minor_model, verify_tree_decomposition, width
from utils.errors import InputError, OracleLimitError
from utils.graph_core import Graph
from utils.oracles import (
    GraphFamily,
    decomposition_from_elimination_order,
    enumerate_connected_graphs,
    exact_minor_test,
    exact_treewidth,
    named_graph,
    random_gnp,
    treewidth_branch_and_bound,
)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_connected_graph_counts(n, count):
    graphs = list(enumerate_connected_graphs(n))
    assert len(graphs) == count
    assert all(g.is_connected() and g.vertices == set(range(n)) for g in graphs)


def test_enumeration_has_no_isomorphic_pair():
    graphs = [g.to_networkx() for g in enumerate_connected_graphs(5)]
    for i, a in enumerate(graphs):
        for b in graphs[i + 1:]:
            assert not nx.is_isomorphic(a, b)


def test_enumeration_limits():
    with pytest.raises(OracleLimitError):
        list(enumerate_connected_graphs(9))
    with pytest.raises(InputError):
        list(enumerate_connected_graphs(0))


@pytest.mark.parametrize(
    "kind, n, expected",
    [
        ("clique", 1, 0),
        ("clique", 5, 4),
        ("cycle", 6, 2),
        ("path", 5, 1),
        ("grid", 3, 3),
        ("star", 4, 1),
        ("wheel", 5, 3),
        ("petersen", 0, 4),
    ],
)
def test_exact_treewidth_of_named_graphs(kind, n, expected):
    graph = named_graph(kind, n)
    result = exact_treewidth(graph)
    assert result.width == expected
    assert width(result.decomposition) == expected
    assert verify_tree_decomposition(graph, result.decomposition).ok
    assert treewidth_branch_and_bound(graph) == expected


def test_exact_treewidth_of_empty_graph():
    assert exact_treewidth(Graph.from_edges(0)).width == -1


@pytest.mark.parametrize(
    "n", [3, 4, 5, 6, pytest.param(7, marks=pytest.mark.sweep), pytest.param(8, marks=pytest.mark.sweep)]
)
def test_two_treewidth_methods_agree(n):
    for graph in enumerate_connected_graphs(n):
        assert exact_treewidth(graph).width == treewidth_branch_and_bound(graph)


def test_treewidth_limit_refuses():
    with pytest.raises(OracleLimitError):
        exact_treewidth(named_graph("path", 5), limit=4)


def test_decomposition_from_elimination_order():
    graph = named_graph("cycle", 5)
    decomposition = decomposition_from_elimination_order(graph, [0, 1, 2, 3, 4])
    assert verify_tree_decomposition(graph, decomposition).ok
    assert width(decomposition) == 2


def test_minor_test_finds_k4_in_the_wheel():
    k4 = PatternSpec.wheel(3).resolved
    host = named_graph("wheel", 5)
    model = exact_minor_test(host, k4)
    assert model is not None
    assert verify_minor_model(host, model).ok


@pytest.mark.parametrize(
    "kind, n",
    [("cycle", 7), ("clique", 3), ("star", 5), ("path", 6)],
)
def test_minor_test_finds_no_k4_in_treewidth_two_graphs(kind, n):
    assert exact_minor_test(named_graph(kind, n), PatternSpec.wheel(3).resolved) is None


def test_minor_test_limits():
    with pytest.raises(OracleLimitError):
        exact_minor_test(named_graph("path", 13), named_graph("path", 2))


def test_random_gnp_is_reproducible():
    assert random_gnp(10, 0.3, seed=7) == random_gnp(10, 0.3, seed=7)
    assert random_gnp(6, 1.0, seed=1).num_edges == 15
    assert random_gnp(6, 0.0, seed=1).num_edges == 0
    with pytest.raises(InputError):
        random_gnp(5, 1.5, seed=0)


def test_graph_family_ids():
    family = GraphFamily("gnp", 6, p=0.5, seeds=(0, 1))
    ids = [instance_id for instance_id, _ in family.generate()]
    assert ids == ["gnp-n6-p0.5-s0", "gnp-n6-p0.5-s1"]

    family = GraphFamily("exhaustive", 4)
    assert [i for i, _ in family.generate()][0] == "conn-n4-00000"

    assert next(GraphFamily("named", 4, name="clique").generate())[0] == "clique-4"


def test_named_graph_rejects_unknown_kind():
    with pytest.raises(InputError):
        named_graph("hypercube", 3)
