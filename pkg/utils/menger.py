"""
Vertex-disjoint S-X paths and minimum vertex separations.

Each vertex is split into an in/out pair joined by a unit-capacity arc, and
the maximum flow comes from networkx's Edmonds-Karp residual network. The
separation returned is the minimum one closest to S.
"""

import logging
from dataclasses import dataclass

from networkx.algorithms.flow import edmonds_karp
import networkx as nx

from utils.errors import ProofInvariantError
from utils.graph_core import Separation, is_separation

logger = logging.getLogger(__name__)

SOURCE = ("source",)
SINK = ("sink",)


@dataclass(frozen=True)
class PathSystem:
    """
    Disjoint paths from `sources` to `targets`. A vertex of both sets is a
    path of length zero. `crossings[i]` is the separator vertex on path i
    when the system comes with a separation.
    """

    paths: tuple
    sources: frozenset
    targets: frozenset
    crossings: tuple = ()

    def __len__(self):
        return len(self.paths)

    def path_through(self, v):
        for path in self.paths:
            if v in path:
                return path
        return None

    @property
    def vertices(self):
        return frozenset(v for path in self.paths for v in path)


def _split_network(graph, sources, targets):
    network = nx.DiGraph()
    network.add_node(SOURCE)
    network.add_node(SINK)
    for v in sorted(graph.vertices):
        network.add_edge(("in", v), ("out", v), capacity=1)
    for u, v in graph.edges():
        network.add_edge(("out", u), ("in", v))
        network.add_edge(("out", v), ("in", u))
    for s in sorted(sources):
        network.add_edge(SOURCE, ("in", s))
    for x in sorted(targets):
        network.add_edge(("out", x), SINK)
    return network


def _flow_paths(residual):
    nxt = {}
    for u, v, data in residual.edges(data=True):
        if data["flow"] > 0:
            nxt.setdefault(u, []).append(v)
    paths = []
    for first in sorted(nxt.get(SOURCE, []), key=lambda node: node[1]):
        path = []
        node = first
        while node != SINK:
            if node[0] == "in":
                path.append(node[1])
            node = nxt[node][0]
        paths.append(path)
    return paths


def _reachable(residual):
    """Nodes reachable from the source along arcs with positive residual capacity."""
    open_arcs = nx.subgraph_view(
        residual,
        filter_edge=lambda u, v: residual[u][v]["capacity"] - residual[u][v]["flow"] > 0,
    )
    return nx.descendants(open_arcs, SOURCE) | {SOURCE}


def _trim(path, sources, targets):
    start = max(i for i, v in enumerate(path) if v in sources)
    end = next(i for i in range(start, len(path)) if path[i] in targets)
    return tuple(path[start:end + 1])


def _solve(graph, S, X):
    S, X = frozenset(S), frozenset(X)
    common = S & X
    rest = graph.remove(common)
    sources, targets = S - common, X - common

    residual = edmonds_karp(_split_network(rest, sources, targets), SOURCE, SINK)
    flow_paths = [_trim(p, sources, targets) for p in _flow_paths(residual)]

    reached = _reachable(residual)
    in_side = {v for v in rest.vertices if ("in", v) in reached}
    cut = {v for v in in_side if ("out", v) not in reached}

    A = frozenset(in_side | common | sources)
    B = frozenset((rest.vertices - in_side) | cut | common | targets)

    zero = [(v,) for v in sorted(common)]
    paths = tuple(zero + sorted(flow_paths))
    return paths, Separation(A, B)


def validate_path_system(graph, system):
    """Raise ProofInvariantError unless `system` is a disjoint S-X path system."""
    used = set()
    ends = system.sources | system.targets
    for path in system.paths:
        if not path:
            raise ProofInvariantError("empty path in path system")
        if path[0] not in system.sources or path[-1] not in system.targets:
            raise ProofInvariantError(f"path {path} does not run from S to X")
        if any(v in ends for v in path[1:-1]):
            raise ProofInvariantError(f"path {path} meets S or X internally")
        for u, v in zip(path, path[1:]):
            if not graph.has_edge(u, v):
                raise ProofInvariantError(f"path {path} uses non-edge {u}-{v}")
        for v in path:
            if v in used:
                raise ProofInvariantError(f"vertex {v} lies on two paths")
            used.add(v)


def validate_separation(graph, separation, system):
    """Each path meets the separator exactly once and the counts agree."""
    if not is_separation(graph, separation.A, separation.B):
        raise ProofInvariantError("(A, B) is not a separation")
    if not system.sources <= separation.A or not system.targets <= separation.B:
        raise ProofInvariantError("separation does not put S in A and X in B")
    if separation.order != len(system):
        raise ProofInvariantError(
            f"separator has {separation.order} vertices but there are {len(system)} paths"
        )
    for path, crossing in zip(system.paths, system.crossings):
        hits = [v for v in path if v in separation.separator]
        if hits != [crossing]:
            raise ProofInvariantError(f"path {path} meets the separator in {hits}")


def max_disjoint_paths(graph, S, X):
    """A maximum system of vertex-disjoint S-X paths."""
    paths, _ = _solve(graph, S, X)
    system = PathSystem(paths, frozenset(S), frozenset(X))
    validate_path_system(graph, system)
    return system


def min_vertex_separation(graph, S, X):
    """
    Minimum separation (A, B) with S in A and X in B, closest to S, together
    with |A ∩ B| disjoint paths each crossing A ∩ B once.
    """
    paths, separation = _solve(graph, S, X)
    crossings = tuple(
        next(v for v in path if v in separation.separator) for path in paths
    )
    system = PathSystem(paths, frozenset(S), frozenset(X), crossings)
    validate_path_system(graph, system)
    validate_separation(graph, separation, system)
    logger.debug(
        "separation of order %d between |S|=%d and |X|=%d", separation.order, len(S), len(X)
    )
    return separation, system
