"""
Graph representation, connectivity queries and minor-taking with provenance.

Vertices are non-negative integers. Every value here is immutable after
construction and every iteration order is sorted, so a run replays exactly.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from utils.errors import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph stored as a vertex -> neighbour-set mapping."""

    adjacency: dict = field(default_factory=dict)

    @classmethod
    def from_edges(cls, vertices, edges=()):
        """
        Build a graph. `vertices` is either a count n (vertices 0..n-1) or an
        iterable of labels. Loops and unknown endpoints are input errors;
        repeated edges collapse.
        """
        if isinstance(vertices, int):
            vertices = range(vertices)
        adjacency = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if u not in adjacency or v not in adjacency:
                raise InputError(f"edge {u}-{v} has an endpoint outside the vertex set")
            adjacency[u].add(v)
            adjacency[v].add(u)
        return cls({v: frozenset(nbrs) for v, nbrs in adjacency.items()})

    @classmethod
    def from_networkx(cls, graph):
        return cls.from_edges(list(graph.nodes), list(graph.edges))

    @cached_property
    def vertices(self):
        return frozenset(self.adjacency)

    @cached_property
    def _edge_tuple(self):
        return tuple(
            (u, v)
            for u in sorted(self.adjacency)
            for v in sorted(self.adjacency[u])
            if u < v
        )

    def edges(self):
        """All edges as sorted (u, v) pairs with u < v."""
        return self._edge_tuple

    @property
    def num_vertices(self):
        return len(self.adjacency)

    @property
    def num_edges(self):
        return len(self._edge_tuple)

    def __len__(self):
        return len(self.adjacency)

    def __contains__(self, v):
        return v in self.adjacency

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.vertices, self._edge_tuple))

    def __repr__(self):
        return f"Graph(n={self.num_vertices}, edges={list(self._edge_tuple)})"

    def adj(self, v):
        return self.adjacency[v]

    def neighbors(self, v):
        return tuple(sorted(self.adjacency[v]))

    def degree(self, v):
        return len(self.adjacency[v])

    def has_edge(self, u, v):
        return u in self.adjacency and v in self.adjacency[u]

    def induced(self, vertices):
        keep = frozenset(vertices) & self.vertices
        return Graph({v: self.adjacency[v] & keep for v in keep})

    def remove(self, vertices):
        return self.induced(self.vertices - frozenset(vertices))

    def with_edges(self, edges, vertices=()):
        """A new graph with extra vertices and edges added."""
        adjacency = {v: set(nbrs) for v, nbrs in self.adjacency.items()}
        for v in vertices:
            adjacency.setdefault(v, set())
        for u, v in edges:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            adjacency.setdefault(u, set()).add(v)
            adjacency.setdefault(v, set()).add(u)
        return Graph({v: frozenset(nbrs) for v, nbrs in adjacency.items()})

    def union(self, other):
        return self.with_edges(other.edges(), vertices=other.vertices)

    def relabel(self, mapping):
        """Rename vertices through an injective mapping."""
        return Graph.from_edges(
            [mapping[v] for v in sorted(self.adjacency)],
            [(mapping[u], mapping[v]) for u, v in self._edge_tuple],
        )

    def is_connected(self):
        return len(components(self)) <= 1

    @cached_property
    def _nx(self):
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.adjacency))
        graph.add_edges_from(self._edge_tuple)
        return graph

    def to_networkx(self):
        """A networkx copy with sorted insertion order."""
        return self._nx.copy()


@dataclass(frozen=True, eq=False)
class ContractionTrace:
    """Maps each current vertex to the original vertices it stands for."""

    branch_of: dict

    @classmethod
    def identity(cls, graph):
        return cls({v: frozenset([v]) for v in sorted(graph.vertices)})

    def expand(self, vertices):
        """Union of the branch sets of `vertices`."""
        out = set()
        for v in vertices:
            out |= self.branch_of[v]
        return frozenset(out)

    def compose(self, inner):
        """
        `inner` maps vertices of a later minor to vertices of this trace's
        graph; the result maps them straight to original vertices.
        """
        return ContractionTrace(
            {v: self.expand(group) for v, group in inner.branch_of.items()}
        )

    def restrict(self, vertices):
        return ContractionTrace({v: self.branch_of[v] for v in sorted(vertices)})


@dataclass(frozen=True)
class Separation:
    A: frozenset
    B: frozenset

    @property
    def order(self):
        return len(self.A & self.B)

    @property
    def separator(self):
        return self.A & self.B


def is_separation(graph, A, B):
    """A ∪ B = V(G) and no edge joins A − B to B − A."""
    A, B = frozenset(A), frozenset(B)
    if A | B != graph.vertices:
        return False
    only_a, only_b = A - B, B - A
    return not any(graph.adj(v) & only_b for v in only_a)


def components(graph):
    """Connected components ordered by smallest vertex label."""
    comps = [frozenset(c) for c in nx.connected_components(graph._nx)]
    return sorted(comps, key=min)


def component_of(graph, v):
    return frozenset(nx.node_connected_component(graph._nx, v))


def blocks_and_cutvertices(graph):
    """
    Block decomposition. Isolated vertices are singleton blocks; blocks are
    ordered by their sorted vertex tuples.
    """
    blocks = [frozenset(b) for b in nx.biconnected_components(graph._nx)]
    blocks += [frozenset([v]) for v in graph.vertices if not graph.adj(v)]
    blocks.sort(key=lambda b: tuple(sorted(b)))
    cut = frozenset(nx.articulation_points(graph._nx))
    return blocks, cut


def neighborhood_of_set(graph, vertices):
    """Vertices outside `vertices` adjacent to some vertex of it."""
    vertices = frozenset(vertices)
    out = set()
    for v in vertices:
        out |= graph.adj(v)
    return frozenset(out - vertices)


def is_2connected(graph):
    if graph.num_vertices < 3:
        return False
    return nx.is_biconnected(graph._nx)


def contract_sets(graph, groups, trace=None):
    """
    Contract each vertex set onto its representative.

    `groups` maps representative -> vertex set containing it. The sets must be
    disjoint and induce connected subgraphs. Returns the simplified minor and
    the trace composed with `trace` (identity when omitted).
    """
    if trace is None:
        trace = ContractionTrace.identity(graph)

    target = {}
    for rep in sorted(groups):
        group = frozenset(groups[rep]) | {rep}
        if not group <= graph.vertices:
            raise InputError(f"group of {rep} leaves the vertex set")
        if not graph.induced(group).is_connected():
            raise InputError(f"group of {rep} is not connected")
        for v in group:
            if v in target:
                raise InputError(f"vertex {v} lies in two contraction groups")
            target[v] = rep

    def image(v):
        return target.get(v, v)

    new_vertices = sorted({image(v) for v in graph.vertices})
    new_edges = {
        (min(image(u), image(v)), max(image(u), image(v)))
        for u, v in graph.edges()
        if image(u) != image(v)
    }
    contracted = Graph.from_edges(new_vertices, sorted(new_edges))

    merged = {v: set() for v in new_vertices}
    for v in graph.vertices:
        merged[image(v)] |= trace.branch_of[v]
    new_trace = ContractionTrace({v: frozenset(merged[v]) for v in new_vertices})
    return contracted, new_trace


def contract_edges(graph, edges, trace=None):
    """
    Contract a set of edges. Every merged class keeps its smallest label.
    """
    edges = list(edges)
    for u, v in edges:
        if not graph.has_edge(u, v):
            raise InputError(f"edge {u}-{v} is not in the graph")
    classes = nx.Graph()
    classes.add_edges_from(edges)
    groups = {min(c): frozenset(c) for c in nx.connected_components(classes)}
    return contract_sets(graph, groups, trace)


def shortest_path_through(graph, start, goal, interior, allow_direct=True):
    """
    Shortest start-goal path whose internal vertices all lie in `interior`,
    or None. With allow_direct=False the path has at least one internal vertex.
    """
    keep = (frozenset(interior) - {start, goal}) | {start, goal}
    sub = graph.induced(keep).to_networkx()
    if not allow_direct and sub.has_edge(start, goal):
        sub.remove_edge(start, goal)
    try:
        return nx.shortest_path(sub, start, goal)
    except nx.NetworkXNoPath:
        return None
