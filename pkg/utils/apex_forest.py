"""
Thin octopus construction: for a tree F, every graph either contains F+ as
a minor or has tree-width at most |V(F)| - 1.

An (S, w)-octopus is an S-rooted tree-decomposition in which every bag with
more than w vertices sits at a non-root leaf whose parent bag has at most |S|
vertices. A wrist is the parent of such a leaf; it is thick when its bag has
exactly |S| vertices.
"""

import logging
from dataclasses import dataclass

from utils.certificates import (
    DecomposeOutcome,
    MinorModel,
    PatternSpec,
    RootedTreeDecomposition,
    Verdict,
    attach,
    join_under_empty_root,
    lift_minor_model,
    remove_leaves,
    single_bag,
    two_node,
    verify_tree_decomposition,
    with_new_root,
)
from utils.errors import InputError, ProofInvariantError
from utils.graph_core import (
    Graph,
    components,
    contract_sets,
    neighborhood_of_set,
)
from utils.menger import max_disjoint_paths, min_vertex_separation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Octopus:
    decomposition: RootedTreeDecomposition
    S: frozenset
    w: int

    def __post_init__(self):
        object.__setattr__(self, "S", frozenset(self.S))


@dataclass(frozen=True)
class Embedding:
    """Isomorphism from a subtree F' of F onto a spanning subgraph of G[S]."""

    phi: dict

    @property
    def domain(self):
        return frozenset(self.phi)

    @property
    def image(self):
        return frozenset(self.phi.values())

    def extend(self, x, v):
        return Embedding({**self.phi, x: v})


def wrists(octopus):
    D, w = octopus.decomposition, octopus.w
    return [
        t for t in range(len(D))
        if any(len(D.bags[c]) >= w + 1 for c in D.children[t])
    ]


def thick_wrists(octopus):
    D = octopus.decomposition
    return [t for t in wrists(octopus) if len(D.bags[t]) == len(octopus.S)]


def oversized_children(octopus, t):
    D = octopus.decomposition
    return [c for c in D.children[t] if len(D.bags[c]) >= octopus.w + 1]


def is_trivial(graph, octopus):
    """Every bag is a subset of S or all of V(G)."""
    return all(
        bag <= octopus.S or bag == graph.vertices
        for bag in octopus.decomposition.bags
    )


def verify_octopus(graph, octopus, thin=False):
    """Tree-decomposition axioms, root bag S, the octopus condition and optional thinness."""
    D = octopus.decomposition
    verdict = verify_tree_decomposition(graph, D, required_root_bag=octopus.S)
    if not verdict:
        return verdict

    for t, bag in enumerate(D.bags):
        if len(bag) < octopus.w + 1:
            continue
        p = D.parents[t]
        if p is None:
            return Verdict.reject("octopus", t, f"oversized bag {t} is the root")
        if not D.is_leaf(t):
            return Verdict.reject("octopus", t, f"oversized bag {t} is not a leaf")
        if len(D.bags[p]) > len(octopus.S):
            return Verdict.reject(
                "octopus", t, f"parent {p} of oversized bag {t} has {len(D.bags[p])} > |S| vertices"
            )

    if thin:
        thick = thick_wrists(octopus)
        if thick:
            return Verdict.reject("thick-wrist", thick[0], f"node {thick[0]} is a thick wrist")

    return Verdict.accept(width=D.max_bag - 1)


def _assert_octopus(graph, octopus, thin, step):
    verdict = verify_octopus(graph, octopus, thin=thin)
    if not verdict:
        raise ProofInvariantError(f"{step}: {verdict.message}")


def easy_octopus(graph, S, w=None):
    """
    Root S; below it, for each component C of G - S, a node with bag N(C)
    whose single child has bag V(C) ∪ N(C). Needs N(C) to be a proper subset
    of S.
    """
    S = frozenset(S)
    bags = [S]
    parents = [None]
    for comp in components(graph.remove(S)):
        boundary = neighborhood_of_set(graph, comp)
        if boundary == S:
            raise InputError(f"component {sorted(comp)} sees all of S")
        bags += [boundary, comp | boundary]
        parents += [0, len(bags) - 2]
    return Octopus(RootedTreeDecomposition(bags, parents), S, len(S) if w is None else w)


def _check_embedding(graph, S, tree, sub_vertices, embedding):
    if embedding.domain != sub_vertices:
        raise InputError("embedding is not defined exactly on the subtree")
    if embedding.image != S or len(S) != len(sub_vertices):
        raise InputError("embedding is not a bijection onto S")
    for x, y in tree.induced(sub_vertices).edges():
        if not graph.has_edge(embedding.phi[x], embedding.phi[y]):
            raise InputError(f"tree edge {x}-{y} does not map to an edge of G[S]")


def _apex_pattern(tree):
    return PatternSpec.apex_forest(tree.edges(), order=tree.num_vertices).resolved


def base_octopus(graph, S, tree, embedding):
    """F' = F: a component seeing all of S completes an F+ model, else the easy octopus."""
    S = frozenset(S)
    _check_embedding(graph, S, tree, tree.vertices, embedding)
    for comp in components(graph.remove(S)):
        if neighborhood_of_set(graph, comp) == S:
            branch = {x: {v} for x, v in embedding.phi.items()}
            branch[tree.num_vertices] = comp
            logger.debug("F+ model found: apex branch %s", sorted(comp))
            return MinorModel(_apex_pattern(tree), branch)
    return easy_octopus(graph, S, w=tree.num_vertices)


def reroute_thick_wrist(graph, S, octopus, z):
    """
    Replace every bag X_t by (X_t ∩ A) ∪ {v_i : X_t ∩ B meets P_i} for a
    minimum separation (A, B) between S and X_z, and hang B below z.
    """
    S = frozenset(S)
    D = octopus.decomposition
    if z not in thick_wrists(octopus):
        raise InputError(f"node {z} is not a thick wrist")

    separation, system = min_vertex_separation(graph, S, D.bags[z])
    if separation.order >= len(S):
        raise InputError(f"thick wrist {z} is already linked to S")

    A, B = separation.A, separation.B
    crossings = list(zip(system.paths, system.crossings))
    bags = []
    for bag in D.bags:
        on_b = bag & B
        moved = {v for path, v in crossings if on_b.intersection(path)}
        bags.append((bag & A) | moved)

    rerouted = RootedTreeDecomposition(bags + [B], list(D.parents) + [z])
    result = Octopus(rerouted, S, octopus.w)

    if rerouted.bags[D.root] != S:
        raise ProofInvariantError("reroute changed the root bag")
    if rerouted.bags[z] != separation.separator:
        raise ProofInvariantError("rerouted wrist bag is not the separator")
    if any(len(new) > len(old) for new, old in zip(rerouted.bags, D.bags)):
        raise ProofInvariantError("reroute grew a bag")
    logger.debug("rerouted wrist %d through a separator of order %d", z, separation.order)
    return result


def minimize_thick_wrists(graph, S, octopus):
    """Reroute until every thick wrist is joined to S by |S| disjoint paths."""
    S = frozenset(S)
    while True:
        before = len(thick_wrists(octopus))
        for z in thick_wrists(octopus):
            if len(max_disjoint_paths(graph, S, octopus.decomposition.bags[z])) < len(S):
                octopus = reroute_thick_wrist(graph, S, octopus, z)
                break
        else:
            return octopus
        after = len(thick_wrists(octopus))
        if after >= before:
            raise ProofInvariantError(f"reroute left {after} thick wrists (was {before})")


def _path_minor(graph, S, wrist_bag, leaf_bag, system):
    """
    G[X_t ∪ X_c] together with the linking paths and G[S], each path
    contracted onto its end in X_t.
    """
    keep = wrist_bag | leaf_bag
    edges = list(graph.induced(keep).edges()) + list(graph.induced(S).edges())
    vertices = set(keep) | set(S)
    for path in system.paths:
        vertices.update(path)
        edges += list(zip(path, path[1:]))
    host = Graph.from_edges(sorted(vertices), edges)
    groups = {path[-1]: frozenset(path) for path in system.paths}
    return contract_sets(host, groups)


def build_thin_octopus(graph, S, tree, sub_vertices, embedding):
    """
    A thin (S, |V(F)|)-octopus of G or an F+ model in G. `sub_vertices` spans
    the subtree F' of F and `embedding` maps it onto G[S].
    """
    S = frozenset(S)
    sub_vertices = frozenset(sub_vertices)
    w = tree.num_vertices
    _check_embedding(graph, S, tree, sub_vertices, embedding)
    logger.debug(
        "octopus: |F|-|F'|=%d |V(G)|=%d |S|=%d", w - len(sub_vertices), graph.num_vertices, len(S)
    )

    if sub_vertices == tree.vertices:
        return base_octopus(graph, S, tree, embedding)

    if graph.num_vertices <= w:
        return Octopus(two_node(S, graph.vertices), S, w)

    comps = components(graph.remove(S))
    if all(neighborhood_of_set(graph, c) != S for c in comps):
        return easy_octopus(graph, S, w)

    u, v = next(
        (a, b) if a in sub_vertices else (b, a)
        for a, b in tree.edges()
        if (a in sub_vertices) != (b in sub_vertices)
    )
    v_star = min(graph.adj(embedding.phi[u]) - S)
    inner = build_thin_octopus(
        graph, S | {v_star}, tree, sub_vertices | {v}, embedding.extend(v, v_star)
    )
    if isinstance(inner, MinorModel):
        return inner

    octopus = Octopus(with_new_root(inner.decomposition, S), S, w)
    _assert_octopus(graph, octopus, False, "prepended root")
    octopus = minimize_thick_wrists(graph, S, octopus)
    _assert_octopus(graph, octopus, False, "thick wrists minimized")

    D = octopus.decomposition
    pending = [(t, c) for t in thick_wrists(octopus) for c in oversized_children(octopus, t)]

    for t, c in pending:
        if D.bags[t] | D.bags[c] == graph.vertices:
            if D.bags[t] != S or D.bags[c] == graph.vertices:
                raise ProofInvariantError(f"wrist {t} and leaf {c} cover V(G) unexpectedly")
            logger.debug("wrist %d with leaf %d covers V(G); using the easy octopus", t, c)
            if any(neighborhood_of_set(graph, comp) == S for comp in comps):
                raise ProofInvariantError("degenerate wrist but a component sees all of S")
            return easy_octopus(graph, S, w)

    systems = {}
    for t in sorted({t for t, _ in pending}):
        systems[t] = max_disjoint_paths(graph, S, D.bags[t])
        if len(systems[t]) != len(S):
            raise ProofInvariantError(f"thick wrist {t} is not linked to S")

    pieces = []
    for t, c in pending:
        system = systems[t]
        minor, trace = _path_minor(graph, S, D.bags[t], D.bags[c], system)
        if minor.num_vertices >= graph.num_vertices:
            raise ProofInvariantError("wrist minor did not shrink")
        phi = {x: system.path_through(g)[-1] for x, g in embedding.phi.items()}
        result = build_thin_octopus(minor, D.bags[t], tree, sub_vertices, Embedding(phi))
        if isinstance(result, MinorModel):
            return lift_minor_model(result, trace)
        pieces.append((result.decomposition, t))

    trimmed, index = remove_leaves(D, [c for _, c in pending])
    combined = attach(trimmed, [(piece, index[t]) for piece, t in pieces])
    octopus = Octopus(combined, S, w)
    _assert_octopus(graph, octopus, True, "wrist pieces attached")
    return octopus


def decompose_apex_forest(graph, pattern):
    """
    An F+ model in G, or a tree-decomposition of width at most |V(F)| - 1.
    Components are handled separately and joined below an empty root bag.
    """
    if isinstance(pattern, Graph):
        pattern = PatternSpec.apex_forest(pattern.edges(), order=pattern.num_vertices)
    tree = pattern.tree
    w = tree.num_vertices

    if not graph.num_vertices:
        return DecomposeOutcome(decomposition=single_bag(frozenset()))

    pieces = []
    for comp in components(graph):
        part = graph.induced(comp)
        s = min(comp)
        root = min(tree.vertices)
        result = build_thin_octopus(part, {s}, tree, {root}, Embedding({root: s}))
        if isinstance(result, MinorModel):
            return DecomposeOutcome(model=result)
        if wrists(result):
            raise ProofInvariantError("single-vertex root octopus has a wrist")
        if result.decomposition.max_bag > w:
            raise ProofInvariantError(f"bag of size {result.decomposition.max_bag} exceeds |V(F)| = {w}")
        pieces.append(result.decomposition)

    decomposition = pieces[0] if len(pieces) == 1 else join_under_empty_root(pieces)
    return DecomposeOutcome(decomposition=decomposition)
