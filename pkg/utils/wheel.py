"""
Rooted decompositions for k-wheel-minor-free graphs.

Given G, a root edge or cycle C with at most k - 1 vertices and k >= 3, the
recursion returns a V(C)-rooted tree-decomposition whose bags have at most
max(floor(3k/2) - 3, k) vertices, or a k-wheel model valid in G.

The path choice (v1, vc, P') is meant to maximise the largest component M of
G - V(C) - V(P'). Instead of searching all paths, the construction runs with
the current choice and, whenever a configuration would contradict
maximality, rebuilds the choice with a strictly larger M and starts over.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from utils.certificates import (
    DecomposeOutcome,
    MinorModel,
    PatternSpec,
    RootedTreeDecomposition,
    add_leaf,
    attach,
    from_tree_edges,
    graft,
    lift_minor_model,
    merge_roots,
    path_decomposition,
    single_bag,
    two_node,
    verify_minor_model,
    verify_tree_decomposition,
    wheel_model_from_cycle,
    with_new_root,
)
from utils.errors import InputError, ProofInvariantError
from utils.graph_core import (
    blocks_and_cutvertices,
    component_of,
    components,
    contract_sets,
    is_2connected,
    neighborhood_of_set,
    shortest_path_through,
)

logger = logging.getLogger(__name__)


def bag_bound(k):
    """max(floor(3k/2) - 3, k)"""
    return max((3 * k - 6) // 2, k)


def cycle_edges(cycle):
    """Consecutive pairs of a cycle sequence; a two-vertex sequence is one edge."""
    cycle = list(cycle)
    if len(cycle) == 2:
        return [(cycle[0], cycle[1])]
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def _path_edges(path):
    return list(zip(path, path[1:]))


@dataclass(frozen=True)
class PathChoice:
    """
    `path` runs v1, u1, ..., ul, vc with interior outside V(C); `rim` is C
    walked from v1 to vc the long way round (just (v1, vc) when C is an edge).
    """

    rim: tuple
    path: tuple
    M: frozenset

    @property
    def v1(self):
        return self.path[0]

    @property
    def vc(self):
        return self.path[-1]

    @property
    def interior(self):
        return self.path[1:-1]

    @property
    def root_cycle(self):
        """C' = C - v1vc + P', or C + P' when C is an edge."""
        return self.rim + tuple(reversed(self.interior))

    @cached_property
    def position(self):
        return {v: i for i, v in enumerate(self.path)}


@dataclass(frozen=True)
class Interval:
    vertices: tuple
    ends: tuple
    Y: frozenset
    boundary: frozenset
    ring: tuple


@dataclass(frozen=True)
class IntervalStructure:
    A: frozenset
    a: int
    a_prime: int
    intervals: tuple

    def interval_of(self, component):
        return next((i for i in self.intervals if i.Y == component), None)


@dataclass(frozen=True)
class JumpTable:
    """S[r] is the set of A-vertices reachable from r by a jump avoiding M."""

    S: dict
    paths: dict
    bad: frozenset

    @property
    def reaching(self):
        return frozenset(r for r, targets in self.S.items() if targets)


@dataclass(frozen=True)
class ImprovementWitness:
    choice: PathChoice
    rule: str


def _orient(cycle, v1, vc):
    cycle = list(cycle)
    if len(cycle) == 2:
        if {v1, vc} != set(cycle):
            raise InputError(f"{v1}-{vc} is not the root edge")
        return (v1, vc)
    i = cycle.index(v1)
    forward = cycle[i:] + cycle[:i]
    if forward[-1] == vc:
        return tuple(forward)
    if forward[1] == vc:
        return tuple([v1] + forward[1:][::-1])
    raise InputError(f"{v1}-{vc} is not an edge of the root cycle")


def _make_choice(graph, cycle, path):
    path = tuple(path)
    rim = _orient(cycle, path[0], path[-1])
    rest = components(graph.remove(set(cycle) | set(path)))
    M = max(rest, key=lambda c: (len(c), -min(c)), default=frozenset())
    return PathChoice(rim, path, M)


def _improve(graph, cycle, old, path, rule):
    new = _make_choice(graph, cycle, path)
    if len(new.M) <= len(old.M):
        raise ProofInvariantError(f"{rule} did not enlarge M ({len(old.M)} -> {len(new.M)})")
    logger.debug("path choice improved by %s: |M| %d -> %d", rule, len(old.M), len(new.M))
    return ImprovementWitness(new, rule)


def _measure(graph, cycle):
    return graph.num_vertices, graph.num_vertices - len(set(cycle))


def _check_measure(graph, cycle, child, child_cycle, site):
    if not _measure(child, child_cycle) < _measure(graph, cycle):
        raise ProofInvariantError(
            f"{site}: measure {_measure(child, child_cycle)} does not drop below {_measure(graph, cycle)}"
        )


def _validate_root(graph, cycle, k):
    cycle = list(cycle)
    if len(cycle) < 2 or len(set(cycle)) != len(cycle):
        raise InputError("the root must be an edge or a cycle of distinct vertices")
    if len(cycle) > k - 1:
        raise InputError(f"root cycle has {len(cycle)} > k - 1 = {k - 1} vertices")
    for u, v in cycle_edges(cycle):
        if not graph.has_edge(u, v):
            raise InputError(f"{u}-{v} on the root is not an edge of the graph")


def is_normalized(graph, cycle):
    """2-connected, G - V(C) connected, every C-vertex sees G - V(C)."""
    root = frozenset(cycle)
    if not is_2connected(graph):
        return False
    if len(components(graph.remove(root))) != 1:
        return False
    return all(graph.adj(v) - root for v in root)


def reduce_connectivity(graph, cycle, k, solve):
    """
    Apply the block, split-component or contraction reduction if one fits.
    Returns the finished certificate, or None when G is already normalized.
    """
    root = frozenset(cycle)

    if not is_2connected(graph):
        blocks, cut = blocks_and_cutvertices(graph)
        bags, edges, placed = [], [], []
        root_node = None
        for block in blocks:
            sub = graph.induced(block)
            sub_cycle = list(cycle) if root <= block else list(sub.edges()[0])
            _check_measure(graph, cycle, sub, sub_cycle, "block")
            result = solve(sub, sub_cycle)
            if isinstance(result, MinorModel):
                return result
            offset = len(bags)
            bags += result.bags
            edges += [(offset + p, offset + t) for t, p in enumerate(result.parents) if p is not None]
            placed.append((block, offset, result))
            if root <= block and root_node is None:
                root_node = offset + result.root
        for v in sorted(cut):
            node = len(bags)
            bags.append(frozenset([v]))
            for block, offset, result in placed:
                if v in block:
                    t = next(t for t in result.order if v in result.bags[t])
                    edges.append((node, offset + t))
        logger.debug("glued %d blocks through %d cut vertices", len(blocks), len(cut))
        return from_tree_edges(bags, edges, root_node)

    outside = components(graph.remove(root))
    if len(outside) > 1:
        pieces = []
        for comp in outside:
            sub = graph.induced(root | comp)
            _check_measure(graph, cycle, sub, cycle, "component")
            result = solve(sub, list(cycle))
            if isinstance(result, MinorModel):
                return result
            pieces.append(result)
        logger.debug("merged %d components of G - V(C)", len(pieces))
        return merge_roots(pieces)

    cycle = list(cycle)
    for i, v in enumerate(cycle):
        if graph.adj(v) - root:
            continue
        if len(cycle) < 3:
            raise ProofInvariantError(f"root-edge vertex {v} has no neighbour off the root")
        w = cycle[(i + 1) % len(cycle)]
        minor, trace = contract_sets(graph, {w: {v, w}})
        smaller = [x for x in cycle if x != v]
        _check_measure(graph, cycle, minor, smaller, "root contraction")
        result = solve(minor, smaller)
        if isinstance(result, MinorModel):
            return lift_minor_model(result, trace)
        return with_new_root(result, root)

    return None


def _direct_decomposition(graph, choice):
    rim, u = choice.rim, choice.interior
    root = frozenset(rim)
    v1, vc = choice.v1, choice.vc
    if len(rim) == 2:
        bags = [root, {v1, u[0], vc}] + [{u[i], u[i + 1], vc} for i in range(len(u) - 1)]
        return path_decomposition(bags)

    for i, v in enumerate(rim):
        expected = {u[0]} if i % 2 == 0 else {u[-1]}
        if graph.adj(v) - root != expected:
            raise ProofInvariantError(f"root vertex {v} breaks the alternating neighbour pattern")
    evens = frozenset(rim[i] for i in range(0, len(rim), 2))
    bags = [root, root | {u[0]}, (root - evens) | {u[0], u[-1]}]
    bags += [{u[i], u[i + 1], u[-1]} for i in range(len(u) - 2)]
    return path_decomposition(bags)


def initial_path(graph, cycle):
    """
    Shortest path between the ends of a root edge through G - V(C). Returns
    the PathChoice, or a direct path-decomposition when C and the path
    cover all of G.
    """
    root = frozenset(cycle)
    best = None
    for x, y in cycle_edges(cycle):
        path = shortest_path_through(graph, x, y, graph.vertices - root, allow_direct=False)
        if path is not None and (best is None or len(path) < len(best)):
            best = path
    if best is None:
        raise ProofInvariantError("no path joins the ends of a root edge outside the root")

    choice = _make_choice(graph, cycle, best)
    if choice.M:
        return choice
    logger.debug("root and shortest path cover G; emitting a path-decomposition")
    return _direct_decomposition(graph, choice)


def _attachments(graph, choice):
    A = frozenset(v for v in choice.interior if graph.adj(v) & choice.M)
    if not A:
        raise ProofInvariantError("no interior path vertex sees M")
    ordered = sorted(A, key=choice.position.get)
    return A, ordered[0], ordered[-1]


def _crossing_witness(graph, cycle, choice, A):
    p, pos = choice.path, choice.position
    spots = sorted(pos[x] for x in A)

    def straddles(i, j):
        return any(i < s < j for s in spots)

    last = len(p) - 1
    for i, u in enumerate(p):
        for w in sorted(graph.adj(u)):
            j = pos.get(w)
            if j is None or j <= i + 1 or (i == 0 and j == last):
                continue
            if straddles(i, j):
                return _improve(graph, cycle, choice, p[:i + 1] + p[j:], "chord")

    rest = graph.remove(set(choice.rim) | set(p) | choice.M)
    for R in components(rest):
        seen = sorted(pos[w] for w in neighborhood_of_set(graph, R) if w in pos)
        if len(seen) >= 2 and straddles(seen[0], seen[-1]):
            detour = shortest_path_through(graph, p[seen[0]], p[seen[-1]], R, allow_direct=False)
            return _improve(graph, cycle, choice, p[:seen[0]] + tuple(detour) + p[seen[-1] + 1:], "detour")
    return None


def compute_jumps(graph, choice, A, a, a_prime):
    """
    Jumps run from a root vertex to A with interior in G - V(C) - A - V(M);
    S[r] collects their A-ends. A jump may be a single edge.
    """
    root = frozenset(choice.rim)
    zone = components(graph.remove(root | A | choice.M))
    owner = {v: i for i, comp in enumerate(zone) for v in comp}
    reach = [neighborhood_of_set(graph, comp) & A for comp in zone]

    S, paths = {}, {}
    for r in sorted(root):
        found = {}
        for x in sorted(graph.adj(r) & A):
            found[x] = (r, x)
        for i in sorted({owner[w] for w in graph.adj(r) if w in owner}):
            for x in sorted(reach[i] - set(found)):
                found[x] = tuple(shortest_path_through(graph, r, x, zone[i], allow_direct=False))
        S[r] = frozenset(found)
        paths.update({(r, x): path for x, path in found.items()})

    bad = frozenset(r for r in root if S[r] - {a, a_prime})
    table = JumpTable(S, paths, bad)
    if not {choice.v1, choice.vc} <= table.reaching:
        raise ProofInvariantError("an end of the root edge has no jump")
    return table


def _join_through(pieces, start, goal):
    union = nx.Graph()
    for piece in pieces:
        union.add_edges_from(_path_edges(piece))
    return nx.shortest_path(union, start, goal)


def _shared_target_witness(graph, cycle, choice, jumps):
    for r, s in cycle_edges(cycle):
        common = jumps.S[r] & jumps.S[s]
        if common:
            b = min(common)
            path = _join_through([jumps.paths[(r, b)], jumps.paths[(s, b)]], r, s)
            return _improve(graph, cycle, choice, path, "shared-target")
    return None


def _bad_neighbour_witness(graph, cycle, choice, jumps, a, a_prime):
    p, pos = choice.path, choice.position
    for x, y in cycle_edges(cycle):
        for r, s in ((x, y), (y, x)):
            if r not in jumps.bad or not jumps.S[s]:
                continue
            b = min(jumps.S[r] - {a, a_prime})
            b2 = min(jumps.S[s])
            i, j = sorted((pos[b], pos[b2]))
            path = _join_through([jumps.paths[(r, b)], jumps.paths[(s, b2)], p[i:j + 1]], r, s)
            return _improve(graph, cycle, choice, path, "bad-neighbour")
    return None


def check_maximality(graph, cycle, choice):
    """First configuration that yields a better path choice, or None."""
    A, a, a_prime = _attachments(graph, choice)
    witness = _crossing_witness(graph, cycle, choice, A)
    if witness is not None or len(A) < 2:
        return witness
    jumps = compute_jumps(graph, choice, A, a, a_prime)
    return (
        _shared_target_witness(graph, cycle, choice, jumps)
        or _bad_neighbour_witness(graph, cycle, choice, jumps, a, a_prime)
    )


def build_interval_structure(graph, cycle, choice, k):
    """
    Attachment set A, its extremes and the open intervals of P with their
    components Y_I. Returns a k-wheel model instead when M or some Y_I sees
    k vertices of a cycle avoiding it.
    """
    root = frozenset(cycle)
    A, a, a_prime = _attachments(graph, choice)
    if len(neighborhood_of_set(graph, choice.M)) >= k:
        logger.debug("M sees at least %d vertices of C'", k)
        return wheel_model_from_cycle(graph, choice.root_cycle, choice.M, k)

    p, rim = choice.path, choice.rim
    spots = sorted(choice.position[x] for x in A)
    outside = graph.remove(root | A)
    intervals = []
    for i, j in zip(spots, spots[1:]):
        if j - i < 2:
            continue
        stretch = p[i + 1:j]
        Y = component_of(outside, stretch[0])
        boundary = neighborhood_of_set(graph, Y)
        if Y & choice.M or Y & set(choice.interior) != set(stretch):
            raise ProofInvariantError(f"component of interval {stretch} reaches past its interval")
        if not boundary <= root | {p[i], p[j]}:
            raise ProofInvariantError(f"component of interval {stretch} has stray neighbours")
        if len(boundary) < 2:
            raise ProofInvariantError(f"component of interval {stretch} hangs on a cut vertex")

        through_m = shortest_path_through(graph, p[i], p[j], choice.M, allow_direct=False)
        if through_m is None:
            raise ProofInvariantError(f"no path through M joins {p[i]} and {p[j]}")
        ring = p[:i + 1] + tuple(through_m[1:-1]) + p[j:] + tuple(rim[-2:0:-1])
        if len(boundary) >= k:
            logger.debug("interval component sees %d cycle vertices", len(boundary))
            return wheel_model_from_cycle(graph, ring, Y, k)
        intervals.append(Interval(tuple(stretch), (p[i], p[j]), Y, boundary, ring))

    return IntervalStructure(A, a, a_prime, tuple(intervals))


def _contract_onto(host, ring, targets, closed=True):
    """
    Merge every ring vertex outside `targets` into the target before it
    (leading vertices of an open path go to the first target).
    """
    ring = list(ring)
    if closed:
        start = next(i for i, v in enumerate(ring) if v in targets)
        ring = ring[start:] + ring[:start]
    groups = {}
    current = next(v for v in ring if v in targets)
    for v in ring:
        if v in targets:
            current = v
        groups.setdefault(current, {current}).add(v)
    minor, trace = contract_sets(host, groups)
    return minor, trace, [v for v in ring if v in targets]


def _recurse_on_ring(graph, cycle, k, host, ring, targets, solve, site, closed=True):
    minor, trace, smaller = _contract_onto(host, ring, targets, closed)
    _check_measure(graph, cycle, minor, smaller, site)
    result = solve(minor, smaller)
    if isinstance(result, MinorModel):
        return lift_minor_model(result, trace)
    return result


def decompose_interval(graph, cycle, k, interval, solve):
    """N(Y_I)-rooted decomposition of G[Y_I ∪ N(Y_I)] plus the ring C_I, contracted onto N(Y_I)."""
    host = graph.induced(interval.Y | interval.boundary).with_edges(
        cycle_edges(interval.ring), vertices=interval.ring
    )
    return _recurse_on_ring(graph, cycle, k, host, interval.ring, interval.boundary, solve, "interval")


def _decompose_end_component(graph, cycle, k, choice, Q, boundary, solve):
    """
    A component holding the stretch of P before a (or after a') meets C'.
    Root it on C' minus that stretch, closed outside Q when possible.
    """
    ring = list(choice.root_cycle)
    starts = [i for i, v in enumerate(ring) if v in Q and ring[i - 1] not in Q]
    if len(starts) != 1:
        raise ProofInvariantError("end component meets C' in more than one stretch")
    rotated = ring[starts[0]:] + ring[:starts[0]]
    rest = [v for v in rotated if v not in Q]
    if not boundary <= set(rest):
        raise ProofInvariantError("end component has neighbours off C'")

    piece = graph.induced(Q | boundary)
    closing = shortest_path_through(
        graph, rest[-1], rest[0], graph.vertices - Q - set(rest), allow_direct=True
    )
    if closing is not None:
        loop = rest + list(closing[1:-1])
        if len(boundary) >= k:
            return wheel_model_from_cycle(graph, loop, Q, k)
        host = piece.with_edges(cycle_edges(loop), vertices=loop)
        return _recurse_on_ring(graph, cycle, k, host, loop, boundary, solve, "end component")

    if len(boundary) == 2:
        host = piece.with_edges(_path_edges(rest), vertices=rest)
        return _recurse_on_ring(graph, cycle, k, host, rest, boundary, solve, "end component", closed=False)
    if len(Q | boundary) <= bag_bound(k):
        return two_node(boundary, Q | boundary)
    if len(boundary) >= k:
        raise ProofInvariantError(f"end component with {len(boundary)} neighbours has no closing path")

    logger.debug("end component closed by an added edge %d-%d", rest[-1], rest[0])
    host = piece.with_edges(cycle_edges(rest), vertices=rest)
    result = _recurse_on_ring(graph, cycle, k, host, rest, boundary, solve, "end component")
    if isinstance(result, MinorModel) and not verify_minor_model(graph, result):
        raise ProofInvariantError("wheel model found through an added edge is not a minor of G")
    return result


def _central_decomposition(graph, cycle, k, choice, structure, jumps):
    root = frozenset(cycle)
    A, a, a_prime = structure.A, structure.a, structure.a_prime
    if len(A) == 1:
        return path_decomposition([root, root | A])

    sees_m = neighborhood_of_set(graph, choice.M)
    R = frozenset(r for r in root if r in jumps.bad or r in sees_m)
    t3, t4 = R | {a, a_prime}, R | A
    if k >= 8 or len(root) <= k - 2:
        return path_decomposition([root, root | {a, a_prime}, t3, t4])

    trigger = next(
        ((v, x) for v in sorted(root - sees_m) for x in (a, a_prime) if jumps.S[v] == {x}),
        None,
    )
    if trigger is None:
        raise ProofInvariantError(f"k = {k}, |C| = {len(root)}: no vertex with a single jump end")
    v, x = trigger
    logger.debug("single-jump vertex %d towards %d shifts the first bags", v, x)
    return path_decomposition([root, root | {x}, (root | {a, a_prime}) - {v}, t3, t4])


def assemble_central(graph, cycle, k, choice, structure, jumps, solve):
    """
    Decompose G* = G[V(C) ∪ A], hang a leaf with bag N(Q) for every
    component Q of G - V(G*), and attach a recursive decomposition there.
    """
    root = frozenset(cycle)
    star = root | structure.A
    pieces_of = components(graph.remove(star))
    ring = choice.root_cycle

    if pieces_of == [choice.M] and neighborhood_of_set(graph, choice.M) == frozenset(ring):
        _check_measure(graph, cycle, graph, ring, "re-rooted on C'")
        logger.debug("M is the only piece and sees all of C'; re-rooting on C'")
        result = solve(graph, list(ring))
        if isinstance(result, MinorModel):
            return result
        return with_new_root(result, root)

    central = _central_decomposition(graph, cycle, k, choice, structure, jumps)
    placed = []
    for Q in pieces_of:
        boundary = neighborhood_of_set(graph, Q)
        t = next((t for t in range(len(central)) if boundary <= central.bags[t]), None)
        if t is None:
            raise ProofInvariantError(f"no central bag holds N(Q) = {sorted(boundary)}")
        central, leaf = add_leaf(central, t, boundary)
        placed.append((Q, boundary, leaf))

    attached = []
    for Q, boundary, leaf in placed:
        interval = structure.interval_of(Q)
        if interval is not None:
            result = decompose_interval(graph, cycle, k, interval, solve)
        elif not Q & set(ring):
            if len(boundary) >= k:
                return wheel_model_from_cycle(graph, ring, Q, k)
            host = graph.induced(Q | boundary).with_edges(cycle_edges(ring), vertices=ring)
            result = _recurse_on_ring(graph, cycle, k, host, ring, boundary, solve, "outside component")
        else:
            result = _decompose_end_component(graph, cycle, k, choice, Q, boundary, solve)
        if isinstance(result, MinorModel):
            return result
        attached.append((result, leaf))

    return attach(central, attached)


def _settle(graph, cycle, k, result):
    if isinstance(result, MinorModel):
        verdict = verify_minor_model(graph, result)
        if not verdict or result.pattern != PatternSpec.wheel(k).resolved:
            raise ProofInvariantError(f"wheel model failed in its own graph: {verdict.message}")
        return result
    verdict = verify_tree_decomposition(graph, result, required_root_bag=cycle, max_bag=bag_bound(k))
    if not verdict:
        raise ProofInvariantError(f"decomposition failed on {graph!r}: {verdict.message}")
    return result


def _solve(graph, cycle, k, depth=0):
    def solve(sub, sub_cycle):
        return _solve(sub, sub_cycle, k, depth + 1)

    root = frozenset(cycle)
    logger.debug("wheel recursion depth %d, measure %s", depth, _measure(graph, cycle))
    if graph.num_vertices <= bag_bound(k):
        return two_node(root, graph.vertices)

    reduced = reduce_connectivity(graph, cycle, k, solve)
    if reduced is not None:
        return _settle(graph, cycle, k, reduced)
    if not is_normalized(graph, cycle):
        raise ProofInvariantError("reductions finished but the graph is not normalized")

    start = initial_path(graph, cycle)
    if isinstance(start, RootedTreeDecomposition):
        return _settle(graph, cycle, k, start)

    choice = start
    for _ in range(graph.num_vertices + 1):
        witness = check_maximality(graph, cycle, choice)
        if witness is None:
            break
        choice = witness.choice
    else:
        raise ProofInvariantError("path improvement did not converge")

    structure = build_interval_structure(graph, cycle, choice, k)
    if isinstance(structure, MinorModel):
        return _settle(graph, cycle, k, structure)

    jumps = None
    if len(structure.A) >= 2:
        jumps = compute_jumps(graph, choice, structure.A, structure.a, structure.a_prime)
        for x, y in cycle_edges(cycle):
            if x in jumps.bad and y in jumps.bad:
                raise ProofInvariantError(f"adjacent bad vertices {x} and {y}")
        limit = max(0, -(-(k - 5) // 2))
        off_m = root - neighborhood_of_set(graph, choice.M)
        if len(jumps.bad & off_m) > limit:
            raise ProofInvariantError(f"{len(jumps.bad & off_m)} bad vertices exceed {limit}")

    return _settle(graph, cycle, k, assemble_central(graph, cycle, k, choice, structure, jumps, solve))


def decompose_wheel(graph, cycle=None, k=3):
    """
    A V(C)-rooted tree-decomposition with bags of at most bag_bound(k)
    vertices, or a k-wheel model. C defaults to the smallest edge; other
    components are decomposed on their own and hung below the root.
    """
    if k < 3:
        raise InputError(f"a wheel needs k >= 3, got {k}")

    if cycle is None:
        if not graph.num_edges:
            if not graph.num_vertices:
                return DecomposeOutcome(decomposition=single_bag(frozenset()))
            first, *others = sorted(graph.vertices)
            decomposition = single_bag({first})
            for v in others:
                decomposition = graft(decomposition, 0, single_bag({v}))
            return DecomposeOutcome(decomposition=decomposition)
        cycle = list(graph.edges()[0])
    cycle = list(cycle)
    _validate_root(graph, cycle, k)

    home = component_of(graph, cycle[0])
    result = _solve(graph.induced(home), cycle, k)
    if isinstance(result, MinorModel):
        return DecomposeOutcome(model=result)

    decomposition = result
    for comp in components(graph.remove(home)):
        part = graph.induced(comp)
        if part.num_edges:
            piece = _solve(part, list(part.edges()[0]), k)
            if isinstance(piece, MinorModel):
                return DecomposeOutcome(model=piece)
        else:
            piece = single_bag(comp)
        decomposition = graft(decomposition, decomposition.root, piece)

    verdict = verify_tree_decomposition(graph, decomposition, required_root_bag=cycle, max_bag=bag_bound(k))
    if not verdict:
        raise ProofInvariantError(f"final decomposition rejected: {verdict.message}")
    return DecomposeOutcome(decomposition=decomposition)
