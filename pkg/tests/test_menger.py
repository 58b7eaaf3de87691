from itertools import combinations

import numpy as np
import pytest

from utils.errors import ProofInvariantError
from utils.graph_core import Graph, components
from utils.menger import (
    PathSystem,
    max_disjoint_paths,
    min_vertex_separation,
    validate_path_system,
)
from utils.oracles import enumerate_connected_graphs


def brute_force_min_cut(graph, S, X):
    """Fewest vertices whose removal leaves no S-X path; S and X may be cut."""
    vertices = sorted(graph.vertices)
    for size in range(len(vertices) + 1):
        for cut in combinations(vertices, size):
            rest = graph.remove(cut)
            sources, targets = set(S) - set(cut), set(X) - set(cut)
            if not any(comp & sources and comp & targets for comp in components(rest)):
                return size
    return len(vertices)


def random_pairs(graph, count, seed):
    rng = np.random.default_rng(seed)
    vertices = sorted(graph.vertices)
    for _ in range(count):
        s = rng.integers(1, len(vertices) + 1)
        x = rng.integers(1, len(vertices) + 1)
        S = frozenset(int(v) for v in rng.choice(vertices, size=s, replace=False))
        X = frozenset(int(v) for v in rng.choice(vertices, size=x, replace=False))
        yield S, X


@pytest.mark.parametrize(
    "n", [2, 3, 4, 5, pytest.param(6, marks=pytest.mark.sweep), pytest.param(7, marks=pytest.mark.sweep)]
)
def test_path_count_matches_brute_force_cut(n):
    for index, graph in enumerate(enumerate_connected_graphs(n)):
        for S, X in random_pairs(graph, 200, seed=1000 * n + index):
            expected = brute_force_min_cut(graph, S, X)
            system = max_disjoint_paths(graph, S, X)
            assert len(system) == expected, (graph, S, X)
            separation, linked = min_vertex_separation(graph, S, X)
            assert separation.order == expected
            assert len(linked) == expected


def test_overlapping_sets_give_zero_length_paths():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    system = max_disjoint_paths(g, {0, 1}, {1, 2})
    assert system.paths == ((1,),)
    assert brute_force_min_cut(g, {0, 1}, {1, 2}) == 1

    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 3), (3, 2)])
    system = max_disjoint_paths(g, {0, 1}, {1, 2})
    assert system.paths == ((1,), (0, 3, 2))


def test_separation_is_closest_to_sources():
    # two parallel routes from 0 meet again at 3 before reaching 4
    g = Graph.from_edges(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])
    separation, system = min_vertex_separation(g, {0}, {4})
    assert separation.separator == {0}
    assert system.crossings == (0,)

    separation, system = min_vertex_separation(g, {1, 2}, {4})
    assert separation.separator == {3}
    assert separation.A == {0, 1, 2, 3}
    assert system.crossings == (3,)


def test_path_system_validator_rejects_shared_vertex():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    bad = PathSystem(((0, 1), (2, 1)), frozenset({0, 2}), frozenset({1}))
    with pytest.raises(ProofInvariantError):
        validate_path_system(g, bad)


def test_path_system_validator_rejects_non_edge():
    g = Graph.from_edges(3, [(0, 1)])
    bad = PathSystem(((0, 2),), frozenset({0}), frozenset({2}))
    with pytest.raises(ProofInvariantError):
        validate_path_system(g, bad)
