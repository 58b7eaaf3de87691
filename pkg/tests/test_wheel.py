import pytest

from utils.certificates import MinorModel, PatternSpec, RootedTreeDecomposition, verify_tree_decomposition
from utils.errors import InputError
from utils.graph_core import Graph
from utils.oracles import enumerate_connected_graphs, exact_treewidth, named_graph, random_gnp
from utils.wheel import (
    IntervalStructure,
    PathChoice,
    assemble_central,
    bag_bound,
    build_interval_structure,
    check_maximality,
    compute_jumps,
    cycle_edges,
    decompose_interval,
    decompose_wheel,
    initial_path,
    is_normalized,
    reduce_connectivity,
)


def solver(k):
    return lambda sub, sub_cycle: decompose_wheel(sub, sub_cycle, k=k).certificate


def refuse(sub, sub_cycle):
    raise AssertionError("no recursion expected")


def maximal_choice(graph, cycle):
    start = initial_path(graph, cycle)
    if isinstance(start, RootedTreeDecomposition):
        return None
    choice = start
    while True:
        witness = check_maximality(graph, cycle, choice)
        if witness is None:
            return choice
        assert len(witness.choice.M) > len(choice.M)
        choice = witness.choice


def check(graph, k, cycle=None):
    outcome = decompose_wheel(graph, cycle=cycle, k=k)
    verdict = outcome.verify(graph, pattern=PatternSpec.wheel(k).resolved, max_bag=bag_bound(k))
    assert verdict.ok, verdict.message
    return outcome


@pytest.mark.parametrize("k, bound", [(3, 3), (4, 4), (5, 5), (6, 6), (7, 7), (8, 9), (10, 12)])
def test_bag_bound(k, bound):
    assert bag_bound(k) == bound


def test_cycle_edges():
    assert cycle_edges([3, 5]) == [(3, 5)]
    assert cycle_edges([0, 1, 2]) == [(0, 1), (1, 2), (2, 0)]


def test_is_normalized():
    assert is_normalized(named_graph("cycle", 4), [0, 1])
    assert not is_normalized(named_graph("path", 4), [0, 1])
    # vertex 2 has no neighbour off the root
    assert not is_normalized(Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3)]), [0, 1, 2])


def test_k4_gives_a_k4_model():
    outcome = check(named_graph("clique", 4), 3)
    assert outcome.kind == "minor"
    assert outcome.model.pattern == named_graph("clique", 4)


def test_cycle_gives_small_bags_rooted_at_the_first_edge():
    outcome = check(named_graph("cycle", 6), 3)
    assert outcome.kind == "decomposition"
    assert outcome.decomposition.root_bag == {0, 1}
    assert outcome.decomposition.max_bag <= 3


def test_explicit_root_cycle():
    graph = named_graph("wheel", 6)
    outcome = check(graph, 4, cycle=[0, 1, 6])
    if outcome.kind == "decomposition":
        assert verify_tree_decomposition(graph, outcome.decomposition, required_root_bag={0, 1, 6}).ok


@pytest.mark.parametrize(
    "cycle, k",
    [([0, 2], 3), ([0, 1, 2], 3), ([0, 0], 4), ([0], 4)],
)
def test_bad_roots_are_input_errors(cycle, k):
    with pytest.raises(InputError):
        decompose_wheel(named_graph("cycle", 5), cycle=cycle, k=k)


def test_k_below_three_is_an_input_error():
    with pytest.raises(InputError):
        decompose_wheel(named_graph("cycle", 5), k=2)


def test_edgeless_and_empty_graphs():
    outcome = check(Graph.from_edges(3), 3)
    assert outcome.decomposition.max_bag == 1
    assert outcome.decomposition.root_bag == {0}
    assert check(Graph.from_edges(0), 3).decomposition.bags == (frozenset(),)


def test_other_components_hang_below_the_root():
    graph = named_graph("cycle", 5).union(Graph.from_edges([5, 6, 7], [(5, 6), (6, 7), (5, 7)]))
    outcome = check(graph.with_edges([], vertices=[8]), 3)
    assert outcome.kind == "decomposition"
    assert outcome.decomposition.root_bag == {0, 1}

    with_k4 = graph.union(named_graph("clique", 4).relabel({0: 10, 1: 11, 2: 12, 3: 13}))
    assert check(with_k4, 3).kind == "minor"


def test_blocks_are_glued_at_the_cut_vertex():
    bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    result = reduce_connectivity(bowtie, [0, 1], 4, solver(4))
    assert isinstance(result, RootedTreeDecomposition)
    assert frozenset({2}) in result.bags
    assert verify_tree_decomposition(bowtie, result, required_root_bag={0, 1}, max_bag=bag_bound(4)).ok


def test_components_off_the_root_share_the_root_bag():
    theta = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    result = reduce_connectivity(theta, [0, 1], 4, solver(4))
    assert result.root_bag == {0, 1}
    assert len(result.children[result.root]) == 2
    assert verify_tree_decomposition(theta, result, required_root_bag={0, 1}, max_bag=bag_bound(4)).ok


def test_normalized_graph_needs_no_reduction():
    assert reduce_connectivity(named_graph("cycle", 5), [0, 1], 3, refuse) is None


def test_initial_path_on_a_cycle_is_a_path_decomposition():
    c6 = named_graph("cycle", 6)
    result = initial_path(c6, [0, 1])
    assert isinstance(result, RootedTreeDecomposition)
    assert result.bags == ({0, 1}, {0, 1, 5}, {1, 4, 5}, {1, 3, 4}, {1, 2, 3})
    assert verify_tree_decomposition(c6, result, required_root_bag={0, 1}, max_bag=3).ok


def test_initial_path_with_alternating_root_neighbours():
    # the 4-cycle root alternates between the two ends of the path 4-5-6
    graph = Graph.from_edges(
        7,
        [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (2, 4), (1, 6), (3, 6), (4, 5), (5, 6)],
    )
    result = initial_path(graph, [0, 1, 2, 3])
    assert isinstance(result, RootedTreeDecomposition)
    assert result.bags == ({0, 1, 2, 3}, {0, 1, 2, 3, 4}, {1, 3, 4, 6}, {4, 5, 6})
    verdict = verify_tree_decomposition(graph, result, required_root_bag={0, 1, 2, 3}, max_bag=bag_bound(5))
    assert verdict.ok


def test_initial_path_leaves_a_component():
    graph = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3), (0, 3)])
    choice = initial_path(graph, [0, 1])
    assert isinstance(choice, PathChoice)
    assert choice.path == (0, 2, 1)
    assert choice.M == {3}
    assert choice.root_cycle == (0, 1, 2)


def test_chord_across_an_attachment_improves_the_choice():
    graph = Graph.from_edges(6, [(0, 1), (0, 2), (2, 3), (3, 4), (4, 1), (2, 4), (3, 5)])
    choice = PathChoice((0, 1), (0, 2, 3, 4, 1), frozenset({5}))
    witness = check_maximality(graph, [0, 1], choice)
    assert witness.rule == "chord"
    assert witness.choice.path == (0, 2, 4, 1)
    assert witness.choice.M == {3, 5}
    assert check_maximality(graph, [0, 1], witness.choice) is None


def test_jumps_single_edges_and_through_the_zone():
    edges = [(0, 1), (0, 2), (2, 3), (3, 4), (4, 1), (5, 2), (5, 3), (5, 4), (0, 3), (6, 1), (6, 3)]
    graph = Graph.from_edges(7, edges)
    choice = PathChoice((0, 1), (0, 2, 3, 4, 1), frozenset({5}))
    jumps = compute_jumps(graph, choice, frozenset({2, 3, 4}), 2, 4)
    assert jumps.S == {0: {2, 3}, 1: {3, 4}}
    assert jumps.paths[(0, 3)] == (0, 3)
    assert jumps.paths[(1, 4)] == (1, 4)
    assert jumps.paths[(1, 3)] == (1, 6, 3)
    assert jumps.bad == {0, 1}
    assert jumps.reaching == {0, 1}


@pytest.mark.parametrize("k", [3, 4])
@pytest.mark.parametrize("n", [5, 6, 7])
def test_jumps_after_maximality_keep_bad_vertices_apart(k, n):
    limit = max(0, -(-(k - 5) // 2))
    for graph in enumerate_connected_graphs(n):
        cycle = list(graph.edges()[0])
        if graph.num_vertices <= bag_bound(k) or not is_normalized(graph, cycle):
            continue
        choice = maximal_choice(graph, cycle)
        if choice is None:
            continue
        structure = build_interval_structure(graph, cycle, choice, k)
        if isinstance(structure, MinorModel) or len(structure.A) < 2:
            continue
        jumps = compute_jumps(graph, choice, structure.A, structure.a, structure.a_prime)
        for x, y in cycle_edges(cycle):
            assert not (x in jumps.bad and y in jumps.bad), graph
        off_m = set(cycle) - {v for v in graph.vertices if graph.adj(v) & choice.M}
        assert len(jumps.bad & off_m) <= limit, graph


def test_interval_structure_and_its_recursion():
    graph = Graph.from_edges(6, [(0, 1), (0, 2), (2, 3), (3, 4), (4, 1), (5, 2), (5, 4)])
    choice = PathChoice((0, 1), (0, 2, 3, 4, 1), frozenset({5}))
    structure = build_interval_structure(graph, [0, 1], choice, 4)
    assert isinstance(structure, IntervalStructure)
    assert structure.A == {2, 4}
    assert (structure.a, structure.a_prime) == (2, 4)
    (interval,) = structure.intervals
    assert interval.vertices == (3,)
    assert interval.Y == {3}
    assert interval.boundary == {2, 4}
    assert interval.ring == (0, 2, 5, 4, 1)
    assert structure.interval_of(frozenset({3})) is interval

    piece = decompose_interval(graph, [0, 1], 4, interval, solver(4))
    assert piece.bags == ({2, 4}, {2, 3, 4})


def test_single_attachment_gives_a_one_bag_centre():
    graph = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3), (0, 3)])
    choice = initial_path(graph, [0, 1])
    structure = build_interval_structure(graph, [0, 1], choice, 4)
    assert structure.A == {2}
    assert structure.intervals == ()

    result = assemble_central(graph, [0, 1], 4, choice, structure, None, solver(4))
    assert result.bags == ({0, 1}, {0, 1, 2}, {0, 2}, {0, 2, 3})
    assert verify_tree_decomposition(graph, result, required_root_bag={0, 1}, max_bag=bag_bound(4)).ok


@pytest.mark.parametrize("k", [3, 4])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_every_small_connected_graph(k, n):
    for graph in enumerate_connected_graphs(n):
        outcome = check(graph, k)
        if outcome.kind == "decomposition":
            assert outcome.decomposition.root_bag == set(graph.edges()[0])
        if k == 3 and exact_treewidth(graph).width >= 3:
            assert outcome.kind == "minor", graph


@pytest.mark.parametrize("k", [3, 4, 5, 6])
@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("p", [0.1, 0.3])
def test_random_graphs_give_valid_certificates(k, seed, p):
    check(random_gnp(16, p, seed), k)
