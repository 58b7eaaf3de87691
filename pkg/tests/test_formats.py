import json

import networkx as nx
import pytest

from utils.certificates import MinorModel, RootedTreeDecomposition, single_bag, verify_tree_decomposition
from utils.errors import ParseError
from utils.formats import (
    emit_decomposition,
    emit_graph,
    emit_graph6,
    emit_minor_model,
    parse_decomposition,
    parse_graph,
    parse_minor_model,
)
from utils.graph_core import Graph
from utils.oracles import enumerate_connected_graphs

K3 = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])


def test_parse_edge_list():
    assert parse_graph("3 3\n0 1\n1 2\n0 2") == K3
    assert parse_graph("# a comment\n3 0\n\n") == Graph.from_edges(3)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("2 1\n0 0", 2, "loop"),
        ("3 2\n0 1\n1 0", 3, "duplicate"),
        ("3 1\n0 3", 2, "out of range"),
        ("3 1\n0 1\n1 2", 3, "more than"),
        ("3\n0 1", 1, "header"),
        ("3 1\n0 x", 2, "integers"),
    ],
)
def test_edge_list_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


def test_edge_list_with_too_few_edges():
    with pytest.raises(ParseError, match="declared 2 edges, found 1"):
        parse_graph("3 2\n0 1")


def test_graph6_triangle():
    assert parse_graph("Bw", "graph6") == K3
    assert emit_graph6(K3) == "Bw"
    assert emit_graph6(K3) == nx.to_graph6_bytes(nx.complete_graph(3), header=False).decode().strip()


def test_graph6_bad_byte_position():
    with pytest.raises(ParseError) as info:
        parse_graph("B w", "graph6")
    assert info.value.position == 1


def test_graph6_round_trip_over_small_graphs():
    for graph in enumerate_connected_graphs(5):
        assert parse_graph(emit_graph(graph, "graph6"), "graph6") == graph
        assert parse_graph(emit_graph(graph)) == graph


def test_emit_single_bag():
    assert emit_decomposition(single_bag({0, 1, 2}), num_vertices=3) == "s td 1 3 3\nb 1 1 2 3\n"


def test_decomposition_round_trip_is_exact():
    graph = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    decomposition = RootedTreeDecomposition(({1, 2}, {0, 1}, {2, 3}), (None, 0, 0))
    text = emit_decomposition(decomposition, num_vertices=4)
    assert text == "s td 3 2 4\nb 1 2 3\nb 2 1 2\nb 3 3 4\n1 2\n1 3\n"
    parsed, n = parse_decomposition(text)
    assert n == 4
    assert parsed == decomposition
    assert emit_decomposition(parsed, num_vertices=4) == text
    assert verify_tree_decomposition(graph, parsed).ok


def test_parse_decomposition_accepts_comments_and_trailing_zero():
    parsed, n = parse_decomposition("c hello\ns td 2 2 3\nb 1 1 2 0\nb 2 2 3\n1 2\n")
    assert n == 3
    assert parsed.bags == ({0, 1}, {1, 2})
    assert parsed.root == 0


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("b 1 1\n", "before"),
        ("s td 2 1 2\nb 1 1\n", "never defined"),
        ("s td 1 2 2\nb 1 1\n", "declared max bag size"),
        ("s td 1 1 2\nb 1 3\n", "out of range"),
        ("s td 2 1 2\nb 1 1\nb 2 2\n", "tree edges"),
        ("s td 3 1 3\nb 1 1\nb 2 2\nb 3 3\n1 2\n2 1\n", "tree"),
    ],
)
def test_parse_decomposition_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_decomposition(text)


def test_minor_model_round_trip():
    model = MinorModel(K3, {0: {0}, 1: {1}, 2: {3, 2}})
    text = emit_minor_model(model)
    assert parse_minor_model(text) == model
    assert emit_minor_model(parse_minor_model(text)) == text
    assert json.loads(text)["branch"]["2"] == [2, 3]


@pytest.mark.parametrize(
    "text",
    [
        '{"pattern": {"n": 3, "edges": [[0, 1]]}, "branch": {"0": [0], "1": [], "2": [2]}}',
        '{"pattern": {"n": 2, "edges": [[0, 5]]}, "branch": {"0": [0], "1": [1]}}',
        '{"pattern": {"n": 2, "edges": []}, "branch": {}, "extra": 1}',
        "not json",
    ],
)
def test_minor_model_rejections(text):
    with pytest.raises(ParseError):
        parse_minor_model(text)
