"""
Certificates: rooted tree-decompositions and minor models, their verifiers,
and the tree surgery the decomposers use to assemble them.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import networkx as nx

from utils.errors import InputError
from utils.graph_core import Graph, components

logger = logging.getLogger(__name__)

APEX_FOREST = "apex-forest"
WHEEL = "wheel"


@dataclass(frozen=True)
class RootedTreeDecomposition:
    """
    Node i has bag `bags[i]` and parent `parents[i]`; the root is the one
    node whose parent is None.
    """

    bags: tuple
    parents: tuple

    def __post_init__(self):
        bags = tuple(frozenset(b) for b in self.bags)
        parents = tuple(self.parents)
        object.__setattr__(self, "bags", bags)
        object.__setattr__(self, "parents", parents)
        if len(bags) != len(parents):
            raise InputError("bags and parents differ in length")
        roots = [i for i, p in enumerate(parents) if p is None]
        if len(bags) and len(roots) != 1:
            raise InputError(f"expected one root, found {len(roots)}")
        for i, p in enumerate(parents):
            if p is not None and not 0 <= p < len(bags):
                raise InputError(f"node {i} has unknown parent {p}")
        if len(self.order) != len(bags):
            raise InputError("parent mapping contains a cycle")

    @cached_property
    def children(self):
        kids = [[] for _ in self.bags]
        for i, p in enumerate(self.parents):
            if p is not None:
                kids[p].append(i)
        return tuple(tuple(k) for k in kids)

    @property
    def root(self):
        return self.parents.index(None)

    @cached_property
    def order(self):
        """Nodes in breadth-first order from the root."""
        if not self.bags:
            return ()
        seen = []
        queue = deque([self.parents.index(None)])
        while queue:
            t = queue.popleft()
            seen.append(t)
            queue.extend(self.children[t])
            if len(seen) > len(self.bags):
                break
        return tuple(seen)

    def __len__(self):
        return len(self.bags)

    @property
    def root_bag(self):
        return self.bags[self.root]

    @property
    def max_bag(self):
        return max((len(b) for b in self.bags), default=0)

    @property
    def vertices(self):
        return frozenset().union(*self.bags)

    def is_leaf(self, t):
        return not self.children[t]


def width(decomposition):
    """Largest bag size minus one."""
    if not decomposition.bags:
        raise InputError("width of an empty decomposition")
    return decomposition.max_bag - 1


def single_bag(bag):
    return RootedTreeDecomposition((bag,), (None,))


def two_node(root_bag, leaf_bag):
    return RootedTreeDecomposition((root_bag, leaf_bag), (None, 0))


def path_decomposition(bags):
    """A decomposition whose tree is a path, rooted at the first bag."""
    bags = list(bags)
    return RootedTreeDecomposition(bags, [None] + list(range(len(bags) - 1)))


def with_new_root(decomposition, bag):
    """Prepend a root with `bag` above the current root."""
    parents = [None] + [0 if p is None else p + 1 for p in decomposition.parents]
    return RootedTreeDecomposition((frozenset(bag),) + decomposition.bags, parents)


def add_leaf(decomposition, parent, bag):
    """Returns the new decomposition and the index of the added leaf."""
    new = RootedTreeDecomposition(
        decomposition.bags + (frozenset(bag),),
        decomposition.parents + (parent,),
    )
    return new, len(decomposition.bags)


def remove_leaves(decomposition, leaves):
    """
    Drop non-root leaves. Returns the smaller decomposition and the map from
    surviving old node ids to new ones.
    """
    leaves = set(leaves)
    for t in leaves:
        if decomposition.parents[t] is None or not decomposition.is_leaf(t):
            raise InputError(f"node {t} is not a non-root leaf")
    keep = [t for t in range(len(decomposition)) if t not in leaves]
    index = {t: i for i, t in enumerate(keep)}
    parents = [
        None if decomposition.parents[t] is None else index[decomposition.parents[t]]
        for t in keep
    ]
    return RootedTreeDecomposition([decomposition.bags[t] for t in keep], parents), index


def attach(base, children):
    """
    Attach each child decomposition by identifying its root with the base
    node z given alongside it. The child's root bag must equal the bag at z.
    """
    bags = list(base.bags)
    parents = list(base.parents)
    for child, z in children:
        if not 0 <= z < len(base.bags):
            raise InputError(f"attach node {z} is not a base node")
        if child.root_bag != base.bags[z]:
            raise InputError(
                f"root bag {sorted(child.root_bag)} differs from bag {sorted(base.bags[z])} at node {z}"
            )
        offset = len(bags)
        index = {}
        for t in child.order:
            if t == child.root:
                index[t] = z
                continue
            index[t] = offset + len(index) - 1
        for t in child.order:
            if t == child.root:
                continue
            bags.append(child.bags[t])
            parents.append(index[child.parents[t]])
    return RootedTreeDecomposition(bags, parents)


def merge_roots(decompositions):
    """Identify the roots of decompositions sharing one root bag."""
    decompositions = list(decompositions)
    if not decompositions:
        raise InputError("nothing to merge")
    base = single_bag(decompositions[0].root_bag)
    return attach(base, [(d, 0) for d in decompositions])


def graft(base, z, child):
    """Copy the whole child tree below base node z; no bag is identified."""
    bags = list(base.bags)
    parents = list(base.parents)
    offset = len(bags)
    position = {t: offset + i for i, t in enumerate(child.order)}
    for t in child.order:
        bags.append(child.bags[t])
        p = child.parents[t]
        parents.append(z if p is None else position[p])
    return RootedTreeDecomposition(bags, parents)


def join_under_empty_root(decompositions):
    """Hang decompositions of disjoint graphs below a fresh empty root bag."""
    joined = single_bag(frozenset())
    for d in decompositions:
        joined = graft(joined, 0, d)
    return joined


def from_tree_edges(bags, edges, root):
    """Orient an undirected tree on nodes 0..len(bags)-1 away from `root`."""
    tree = nx.Graph()
    tree.add_nodes_from(range(len(bags)))
    tree.add_edges_from(edges)
    if not nx.is_tree(tree):
        raise InputError("decomposition edges do not form a tree")
    parents = [None] * len(bags)
    for parent, child in nx.bfs_edges(tree, root):
        parents[child] = parent
    return RootedTreeDecomposition(bags, parents)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verifier. A rejection names the rule and a witness."""

    ok: bool
    rule: Optional[str] = None
    witness: object = None
    message: str = ""
    details: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.ok

    @classmethod
    def accept(cls, message="ok", **details):
        return cls(True, message=message, details=details)

    @classmethod
    def reject(cls, rule, witness, message):
        return cls(False, rule=rule, witness=witness, message=message)


def verify_tree_decomposition(graph, decomposition, required_root_bag=None, max_bag=None):
    """
    Check the three tree-decomposition axioms, then the optional root-bag and
    bag-size requirements.
    """
    D = decomposition
    if not D.bags:
        if graph.num_vertices:
            v = min(graph.vertices)
            return Verdict.reject("vertex-coverage", v, f"vertex {v} is in no bag")
        return Verdict.accept(width=-1)

    for t, bag in enumerate(D.bags):
        stray = bag - graph.vertices
        if stray:
            v = min(stray)
            return Verdict.reject("unknown-vertex", (t, v), f"bag {t} holds {v}, which is not a vertex")

    missing = graph.vertices - D.vertices
    if missing:
        v = min(missing)
        return Verdict.reject("vertex-coverage", v, f"vertex {v} is in no bag")

    for u, v in graph.edges():
        if not any(u in bag and v in bag for bag in D.bags):
            return Verdict.reject("edge-coverage", (u, v), f"edge {u}-{v} is in no bag")

    tops = {}
    for t, bag in enumerate(D.bags):
        p = D.parents[t]
        for v in bag:
            if p is None or v not in D.bags[p]:
                tops.setdefault(v, []).append(t)
    for v in sorted(tops):
        if len(tops[v]) > 1:
            return Verdict.reject(
                "connectivity",
                (v, tuple(tops[v])),
                f"nodes containing {v} split into {len(tops[v])} subtrees",
            )

    if required_root_bag is not None and D.root_bag != frozenset(required_root_bag):
        return Verdict.reject(
            "root-bag",
            tuple(sorted(D.root_bag)),
            f"root bag {sorted(D.root_bag)} is not {sorted(required_root_bag)}",
        )

    if max_bag is not None:
        for t, bag in enumerate(D.bags):
            if len(bag) > max_bag:
                return Verdict.reject("bag-size", t, f"bag {t} has {len(bag)} > {max_bag} vertices")

    return Verdict.accept(width=D.max_bag - 1)


def cliques_covered(graph, decomposition):
    """Every maximal clique of the graph lies inside one bag."""
    for clique in nx.find_cliques(graph.to_networkx()):
        clique = frozenset(clique)
        if not any(clique <= bag for bag in decomposition.bags):
            return False
    return True


@dataclass(frozen=True, eq=False)
class MinorModel:
    """Branch sets of the host graph, one per pattern vertex."""

    pattern: Graph
    branch: dict

    def __post_init__(self):
        object.__setattr__(
            self,
            "branch",
            {x: frozenset(self.branch[x]) for x in sorted(self.branch)},
        )

    def __eq__(self, other):
        if not isinstance(other, MinorModel):
            return NotImplemented
        return self.pattern == other.pattern and self.branch == other.branch

    def __hash__(self):
        return hash((self.pattern, tuple(self.branch.items())))


def verify_minor_model(host, model):
    """Check disjoint, connected, non-empty branch sets realising every pattern edge."""
    pattern = model.pattern
    for x in sorted(pattern.vertices):
        if x not in model.branch:
            return Verdict.reject("missing-branch", x, f"pattern vertex {x} has no branch set")
    for x in sorted(model.branch):
        if x not in pattern:
            return Verdict.reject("unknown-pattern-vertex", x, f"{x} is not a pattern vertex")

    owner = {}
    for x, branch in model.branch.items():
        if not branch:
            return Verdict.reject("empty-branch", x, f"branch set of {x} is empty")
        stray = branch - host.vertices
        if stray:
            v = min(stray)
            return Verdict.reject("unknown-vertex", (x, v), f"branch set of {x} holds non-vertex {v}")
        for v in sorted(branch):
            if v in owner:
                return Verdict.reject(
                    "overlap", (owner[v], x, v), f"vertex {v} is in the branch sets of {owner[v]} and {x}"
                )
            owner[v] = x

    for x, branch in model.branch.items():
        if len(components(host.induced(branch))) != 1:
            return Verdict.reject("disconnected-branch", x, f"branch set of {x} is not connected")

    for x, y in pattern.edges():
        bx, by = model.branch[x], model.branch[y]
        if not any(host.adj(v) & by for v in bx):
            return Verdict.reject("missing-edge", (x, y), f"no host edge joins the branch sets of {x} and {y}")

    return Verdict.accept(pattern_vertices=pattern.num_vertices)


def lift_minor_model(model, trace):
    """Replace every branch vertex by the original vertices it represents."""
    return MinorModel(
        model.pattern,
        {x: trace.expand(branch) for x, branch in model.branch.items()},
    )


@dataclass(frozen=True)
class PatternSpec:
    """
    Apex-forest F+ or k-wheel. The apex or hub is the highest-numbered
    pattern vertex.
    """

    kind: str
    tree_edges: tuple = ()
    tree_order: int = 0
    k: int = 0

    @classmethod
    def apex_forest(cls, tree_edges, order=None):
        tree_edges = tuple(sorted((min(u, v), max(u, v)) for u, v in tree_edges))
        if order is None:
            order = len(tree_edges) + 1
        tree = Graph.from_edges(order, tree_edges)
        if order < 1 or tree.num_edges != order - 1 or not tree.is_connected():
            raise InputError("the forest pattern must be a tree on vertices 0..n-1")
        return cls(APEX_FOREST, tree_edges=tree_edges, tree_order=order)

    @classmethod
    def wheel(cls, k):
        if k < 3:
            raise InputError(f"a wheel needs k >= 3, got {k}")
        return cls(WHEEL, k=k)

    @property
    def tree(self):
        return Graph.from_edges(self.tree_order, self.tree_edges)

    @property
    def apex(self):
        return self.tree_order if self.kind == APEX_FOREST else self.k

    @cached_property
    def resolved(self):
        if self.kind == APEX_FOREST:
            m = self.tree_order
            return Graph.from_edges(m + 1, list(self.tree_edges) + [(x, m) for x in range(m)])
        k = self.k
        rim = [(i, (i + 1) % k) for i in range(k)]
        return Graph.from_edges(k + 1, rim + [(i, k) for i in range(k)])

    def describe(self):
        if self.kind == APEX_FOREST:
            return f"{APEX_FOREST}(n={self.tree_order})"
        return f"{WHEEL}(k={self.k})"


def wheel_model_from_cycle(graph, cycle, hub, k):
    """
    k-wheel model from a cycle of the graph and a connected hub set disjoint
    from it that sees at least k cycle vertices. Rim branch sets run from one
    chosen hub neighbour up to the next.
    """
    hub = frozenset(hub)
    cycle = list(cycle)
    seen = [i for i, v in enumerate(cycle) if graph.adj(v) & hub]
    if len(seen) < k:
        raise InputError(f"hub sees {len(seen)} cycle vertices, need {k}")
    start = seen[0]
    rotated = cycle[start:] + cycle[:start]
    cut = [i - start for i in seen[:k]]
    segments = [rotated[cut[j]:cut[j + 1]] for j in range(k - 1)]
    segments.append(rotated[cut[k - 1]:])
    branch = {j: frozenset(seg) for j, seg in enumerate(segments)}
    branch[k] = hub
    return MinorModel(PatternSpec.wheel(k).resolved, branch)


@dataclass(frozen=True)
class DecomposeOutcome:
    """Either a decomposition or a minor model, never both."""

    decomposition: Optional[RootedTreeDecomposition] = None
    model: Optional[MinorModel] = None

    def __post_init__(self):
        if (self.decomposition is None) == (self.model is None):
            raise InputError("an outcome holds exactly one certificate")

    @property
    def kind(self):
        return "decomposition" if self.decomposition is not None else "minor"

    @property
    def certificate(self):
        return self.decomposition if self.decomposition is not None else self.model

    def verify(self, graph, pattern=None, max_bag=None, required_root_bag=None):
        if self.decomposition is not None:
            return verify_tree_decomposition(graph, self.decomposition, required_root_bag, max_bag)
        if pattern is not None and self.model.pattern != pattern:
            return Verdict.reject("pattern", None, "model is for a different pattern")
        return verify_minor_model(graph, self.model)
