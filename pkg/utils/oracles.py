"""
Desk-scale ground truth: exact tree-width (two independent methods), exact
minor containment, exhaustive enumeration of connected graphs and seeded
random graphs.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import networkx as nx
import numpy as np
from networkx.algorithms.approximation import treewidth_min_fill_in
from networkx.algorithms.graph_hashing import weisfeiler_lehman_graph_hash
from networkx.algorithms.isomorphism import GraphMatcher

from utils import constants
from utils.certificates import (
    MinorModel,
    PatternSpec,
    RootedTreeDecomposition,
    single_bag,
    verify_minor_model,
    verify_tree_decomposition,
)
from utils.errors import InputError, OracleLimitError, ProofInvariantError
from utils.graph_core import Graph

logger = logging.getLogger(__name__)

NAMED_KINDS = ("clique", "cycle", "path", "grid", "wheel", "star", "petersen")


@dataclass(frozen=True)
class TreewidthResult:
    width: int
    decomposition: RootedTreeDecomposition
    order: tuple


def decomposition_from_elimination_order(graph, order):
    """
    Bag of v is v plus its later neighbours in the filled graph; its parent
    is the bag of the earliest of those neighbours. Rooted at the last vertex.
    """
    order = list(order)
    if sorted(order) != sorted(graph.vertices) or len(set(order)) != len(order):
        raise InputError("elimination order is not a permutation of the vertices")
    if not order:
        return single_bag(frozenset())

    position = {v: i for i, v in enumerate(order)}
    adjacency = {v: set(graph.adj(v)) for v in order}
    bags, parents = [], []
    for v in order:
        later = adjacency.pop(v)
        for u in later:
            adjacency[u] |= later - {u}
            adjacency[u].discard(v)
        bags.append(frozenset(later | {v}))
        parents.append(min((position[u] for u in later), default=None))

    root = len(order) - 1
    parents = [p if p is not None or i == root else root for i, p in enumerate(parents)]
    return RootedTreeDecomposition(bags, parents)


def _bit_adjacency(graph):
    labels = sorted(graph.vertices)
    index = {v: i for i, v in enumerate(labels)}
    adjacency = [0] * len(labels)
    for u, v in graph.edges():
        adjacency[index[u]] |= 1 << index[v]
        adjacency[index[v]] |= 1 << index[u]
    return labels, adjacency


def _outside_reach(adjacency, inside, v):
    """Vertices outside `inside` reachable from v through `inside`."""
    seen = 1 << v
    stack = [v]
    outside = 0
    while stack:
        u = stack.pop()
        fresh = adjacency[u] & ~seen
        seen |= fresh
        outside |= fresh & ~inside
        inner = fresh & inside
        while inner:
            low = inner & -inner
            stack.append(low.bit_length() - 1)
            inner ^= low
    return bin(outside).count("1")


def exact_treewidth(graph, limit=constants.TREEWIDTH_LIMIT):
    """
    Dynamic programming over vertex subsets: TW(S) is the best width of an
    elimination order that removes S first. Returns the width together with
    a witness decomposition built from the optimal order.
    """
    n = graph.num_vertices
    if n > limit:
        raise OracleLimitError("exact_treewidth", n, limit)
    if not n:
        return TreewidthResult(-1, single_bag(frozenset()), ())

    labels, adjacency = _bit_adjacency(graph)
    full = (1 << n) - 1
    best = [0] * (full + 1)
    choice = [-1] * (full + 1)
    best[0] = -1
    for mask in range(1, full + 1):
        value, pick = n, -1
        rest_bits = mask
        while rest_bits:
            low = rest_bits & -rest_bits
            rest_bits ^= low
            v = low.bit_length() - 1
            rest = mask ^ low
            if best[rest] >= value:
                continue
            candidate = max(best[rest], _outside_reach(adjacency, rest, v))
            if candidate < value:
                value, pick = candidate, v
        best[mask], choice[mask] = value, pick

    order = []
    mask = full
    while mask:
        v = choice[mask]
        order.append(labels[v])
        mask ^= 1 << v
    order.reverse()

    decomposition = decomposition_from_elimination_order(graph, order)
    verdict = verify_tree_decomposition(graph, decomposition)
    if not verdict or decomposition.max_bag - 1 != best[full]:
        raise ProofInvariantError(f"treewidth witness does not match width {best[full]}")
    logger.debug("exact treewidth %d on %d vertices", best[full], n)
    return TreewidthResult(best[full], decomposition, tuple(order))


def _eliminate(adjacency, v):
    nbrs = adjacency[v]
    out = {u: set(ws) for u, ws in adjacency.items() if u != v}
    for u in nbrs:
        out[u] |= nbrs - {u}
        out[u].discard(v)
    return out


def _is_clique(adjacency, vertices):
    return all(b in adjacency[a] for a, b in combinations(vertices, 2))


def _minor_min_width(adjacency):
    """Lower bound: repeatedly contract a minimum-degree vertex into its sparsest neighbour."""
    adjacency = {u: set(ws) for u, ws in adjacency.items()}
    bound = 0
    while len(adjacency) > 1:
        d, v = min((len(ws), u) for u, ws in adjacency.items())
        bound = max(bound, d)
        nbrs = adjacency.pop(v)
        if not nbrs:
            continue
        _, u = min((len(adjacency[w] & nbrs), w) for w in nbrs)
        for w in nbrs:
            adjacency[w].discard(v)
            if w != u:
                adjacency[w].add(u)
                adjacency[u].add(w)
    return bound


def treewidth_branch_and_bound(graph, limit=constants.TREEWIDTH_LIMIT):
    """Elimination-order search with min-fill upper bound and minor-min-width pruning."""
    n = graph.num_vertices
    if n > limit:
        raise OracleLimitError("treewidth_branch_and_bound", n, limit)
    if not n:
        return -1

    upper, _ = treewidth_min_fill_in(graph.to_networkx())
    best = [upper]
    seen = {}

    def search(adjacency, g):
        reduced = True
        while reduced:
            reduced = False
            for v in sorted(adjacency):
                if _is_clique(adjacency, sorted(adjacency[v])):
                    g = max(g, len(adjacency[v]))
                    adjacency = _eliminate(adjacency, v)
                    reduced = True
                    break
        if g >= best[0]:
            return
        if len(adjacency) - 1 <= g:
            best[0] = g
            return
        key = frozenset(adjacency)
        if seen.get(key, n + 1) <= g:
            return
        seen[key] = g
        if max(g, _minor_min_width(adjacency)) >= best[0]:
            return
        for v in sorted(adjacency, key=lambda u: (len(adjacency[u]), u)):
            degree = len(adjacency[v])
            if max(g, degree) < best[0]:
                search(_eliminate(adjacency, v), max(g, degree))

    search({v: set(graph.adj(v)) for v in graph.vertices}, 0)
    return best[0]


def _quotient(graph, classes):
    rep = {v: min(c) for c in classes for v in c}
    edges = {(min(rep[u], rep[v]), max(rep[u], rep[v])) for u, v in graph.edges() if rep[u] != rep[v]}
    return Graph.from_edges(sorted(rep[v] for v in map(min, classes)), sorted(edges))


def exact_minor_test(
    graph,
    pattern,
    limit=constants.MINOR_LIMIT,
    pattern_limit=constants.MINOR_PATTERN_LIMIT,
):
    """
    Search every partition of V(G) into connected classes reachable by edge
    contractions; at each one, look for the pattern as a subgraph of the
    quotient. Returns a verified MinorModel or None.
    """
    if graph.num_vertices > limit:
        raise OracleLimitError("exact_minor_test host", graph.num_vertices, limit)
    if pattern.num_vertices > pattern_limit:
        raise OracleLimitError("exact_minor_test pattern", pattern.num_vertices, pattern_limit)
    if not pattern.num_vertices:
        return MinorModel(pattern, {})

    target = pattern.to_networkx()
    start = tuple(frozenset([v]) for v in sorted(graph.vertices))
    stack = [start]
    visited = {frozenset(start)}
    while stack:
        classes = stack.pop()
        quotient = _quotient(graph, classes)
        if quotient.num_vertices < pattern.num_vertices or quotient.num_edges < pattern.num_edges:
            continue
        matcher = GraphMatcher(quotient.to_networkx(), target)
        mapping = next(matcher.subgraph_monomorphisms_iter(), None)
        if mapping is not None:
            by_rep = {min(c): c for c in classes}
            model = MinorModel(pattern, {x: by_rep[q] for q, x in mapping.items()})
            if not verify_minor_model(graph, model):
                raise ProofInvariantError("minor search produced an invalid model")
            return model
        if quotient.num_vertices == pattern.num_vertices:
            continue
        by_rep = {min(c): c for c in classes}
        for a, b in quotient.edges():
            merged = by_rep[a] | by_rep[b]
            nxt = tuple(sorted((c for c in classes if c is not by_rep[a] and c is not by_rep[b]), key=min))
            nxt = tuple(sorted(nxt + (merged,), key=min))
            key = frozenset(nxt)
            if key not in visited:
                visited.add(key)
                stack.append(nxt)
    return None


def _wl_key(graph):
    nx_graph = graph.to_networkx()
    degrees = tuple(sorted(d for _, d in nx_graph.degree()))
    return degrees, weisfeiler_lehman_graph_hash(nx_graph)


@lru_cache(maxsize=None)
def _connected_representatives(n):
    if n == 1:
        return (Graph.from_edges(1),)
    buckets = {}
    found = []
    new = n - 1
    for base in _connected_representatives(n - 1):
        for size in range(1, n):
            for nbrs in combinations(range(new), size):
                candidate = base.with_edges([(u, new) for u in nbrs], vertices=[new])
                key = _wl_key(candidate)
                bucket = buckets.setdefault(key, [])
                cand_nx = candidate.to_networkx()
                if any(nx.is_isomorphic(cand_nx, other.to_networkx()) for other in bucket):
                    continue
                bucket.append(candidate)
                found.append(candidate)
    logger.debug("%d connected graphs on %d vertices", len(found), n)
    return tuple(found)


def enumerate_connected_graphs(n, limit=constants.ENUMERATION_LIMIT):
    """
    One representative per isomorphism class of connected graphs on
    vertices 0..n-1. Every connected graph arises from a smaller one by
    adding a vertex of degree at least one.
    """
    if n > limit:
        raise OracleLimitError("enumerate_connected_graphs", n, limit)
    if n < 1:
        raise InputError(f"need at least one vertex, got {n}")
    yield from _connected_representatives(n)


def random_gnp(n, p, seed):
    """G(n, p) drawn from numpy's default generator; same seed, same graph."""
    if not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability {p} is outside [0, 1]")
    if n < 0:
        raise InputError(f"negative vertex count {n}")
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(n), 2))
    draws = rng.random(len(pairs))
    return Graph.from_edges(n, [pair for pair, draw in zip(pairs, draws) if draw < p])


def named_graph(kind, n=0):
    """
    clique/cycle/path on n vertices, the n x n grid, the n-wheel (rim 0..n-1,
    hub n), the star with n leaves, or the Petersen graph.
    """
    if kind == "clique":
        nx_graph = nx.complete_graph(n)
    elif kind == "cycle":
        if n < 3:
            raise InputError("a cycle needs at least 3 vertices")
        nx_graph = nx.cycle_graph(n)
    elif kind == "path":
        nx_graph = nx.path_graph(n)
    elif kind == "grid":
        nx_graph = nx.convert_node_labels_to_integers(nx.grid_2d_graph(n, n), ordering="sorted")
    elif kind == "wheel":
        return PatternSpec.wheel(n).resolved
    elif kind == "star":
        nx_graph = nx.star_graph(n)
    elif kind == "petersen":
        nx_graph = nx.petersen_graph()
    else:
        raise InputError(f"unknown graph family {kind!r}; expected one of {', '.join(NAMED_KINDS)}")
    return Graph.from_networkx(nx_graph)


@dataclass(frozen=True)
class GraphFamily:
    """
    A stream of named instances: "exhaustive" (connected graphs on n
    vertices), "gnp" (one graph per seed) or "named".
    """

    kind: str
    n: int
    p: float = 0.0
    seeds: tuple = ()
    name: str = ""

    def generate(self):
        if self.kind == "exhaustive":
            for i, graph in enumerate(enumerate_connected_graphs(self.n)):
                yield f"conn-n{self.n}-{i:05d}", graph
        elif self.kind == "gnp":
            for seed in self.seeds:
                yield f"gnp-n{self.n}-p{self.p:g}-s{seed}", random_gnp(self.n, self.p, seed)
        elif self.kind == "named":
            yield f"{self.name}-{self.n}", named_graph(self.name, self.n)
        else:
            raise InputError(f"unknown family kind {self.kind!r}")
