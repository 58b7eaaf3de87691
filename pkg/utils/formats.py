"""
Text formats for graphs and certificates.

Edge lists are 0-indexed ("n m" header, one "u v" pair per line). The .td
output is 1-indexed and its bag 1 is the root. Minor models are JSON.
"""

import logging

import networkx as nx
from pydantic import ValidationError

from Models.schemas import MinorModelDocument, PatternDocument
from utils.certificates import MinorModel, from_tree_edges
from utils.errors import InputError, ParseError
from utils.graph_core import Graph

logger = logging.getLogger(__name__)

EDGELIST = "edgelist"
GRAPH6 = "graph6"

GRAPH6_MIN_BYTE = 63
GRAPH6_MAX_BYTE = 126


def _ints(parts, line_no):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(parts)!r}", line=line_no) from None


def _content_lines(text, comment_prefix=None):
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if comment_prefix and line.startswith(comment_prefix):
            continue
        yield line_no, line.split()


def parse_edge_list(text):
    lines = _content_lines(text, comment_prefix="#")
    header = next(lines, None)
    if header is None:
        raise ParseError("missing 'n m' header", line=1)
    line_no, parts = header
    if len(parts) != 2:
        raise ParseError("header must be 'n m'", line=line_no)
    n, m = _ints(parts, line_no)
    if n < 0 or m < 0:
        raise ParseError("negative vertex or edge count", line=line_no)

    edges = []
    seen = set()
    for line_no, parts in lines:
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", line=line_no)
        u, v = _ints(parts, line_no)
        for x in (u, v):
            if not 0 <= x < n:
                raise ParseError(f"vertex {x} out of range 0..{n - 1}", line=line_no)
        if u == v:
            raise ParseError(f"loop at vertex {u}", line=line_no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u} {v}", line=line_no)
        seen.add(key)
        edges.append(key)
        if len(edges) > m:
            raise ParseError(f"more than the declared {m} edges", line=line_no)

    if len(edges) != m:
        raise ParseError(f"declared {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def parse_graph6(text):
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    if not data:
        raise ParseError("empty graph6 string", position=0)
    for position, char in enumerate(data):
        if not GRAPH6_MIN_BYTE <= ord(char) <= GRAPH6_MAX_BYTE:
            raise ParseError(f"byte {char!r} outside the graph6 range", position=position)
    try:
        graph = nx.from_graph6_bytes(data.encode("ascii"))
    except nx.NetworkXError as exc:
        raise ParseError(f"bad graph6 encoding: {exc}", position=len(data)) from exc
    return Graph.from_networkx(graph)


def parse_graph(text, format=EDGELIST):
    if format == EDGELIST:
        return parse_edge_list(text)
    if format == GRAPH6:
        return parse_graph6(text)
    raise ParseError(f"unknown graph format {format!r}")


def emit_graph(graph, format=EDGELIST):
    if format == GRAPH6:
        return emit_graph6(graph)
    lines = [f"{graph.num_vertices} {graph.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def emit_graph6(graph):
    """graph6 of a graph on vertices 0..n-1, without header or newline."""
    if sorted(graph.vertices) != list(range(graph.num_vertices)):
        raise ParseError("graph6 needs vertices 0..n-1")
    return nx.to_graph6_bytes(graph.to_networkx(), header=False).decode("ascii").strip()


def emit_decomposition(decomposition, num_vertices=None):
    """
    PACE .td text. Bags are numbered in breadth-first order so the root is
    bag 1, and each edge is written parent first.
    """
    if num_vertices is None:
        num_vertices = max(decomposition.vertices, default=-1) + 1
    number = {t: i + 1 for i, t in enumerate(decomposition.order)}
    lines = [f"s td {len(decomposition)} {decomposition.max_bag} {num_vertices}"]
    for t in decomposition.order:
        vertices = " ".join(str(v + 1) for v in sorted(decomposition.bags[t]))
        lines.append(f"b {number[t]} {vertices}".rstrip())
    for t in decomposition.order:
        parent = decomposition.parents[t]
        if parent is not None:
            lines.append(f"{number[parent]} {number[t]}")
    return "\n".join(lines) + "\n"


def parse_decomposition(text):
    """
    Parse .td text. Returns (decomposition, declared vertex count); the
    decomposition is 0-indexed and rooted at bag 1.
    """
    header = None
    bags = {}
    edges = []
    for line_no, parts in _content_lines(text, comment_prefix="c"):
        if parts[0] == "s":
            if header is not None:
                raise ParseError("second 's td' line", line=line_no)
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError("header must be 's td <bags> <max bag> <n>'", line=line_no)
            header = _ints(parts[2:], line_no)
            continue
        if header is None:
            raise ParseError("content before the 's td' header", line=line_no)
        num_bags, _, n = header
        if parts[0] == "b":
            if len(parts) < 2:
                raise ParseError("bag line without an id", line=line_no)
            bag_id, *vertices = _ints(parts[1:], line_no)
            if vertices and vertices[-1] == 0:
                vertices = vertices[:-1]
            if not 1 <= bag_id <= num_bags:
                raise ParseError(f"bag id {bag_id} out of range 1..{num_bags}", line=line_no)
            if bag_id in bags:
                raise ParseError(f"bag {bag_id} defined twice", line=line_no)
            for v in vertices:
                if not 1 <= v <= n:
                    raise ParseError(f"vertex {v} out of range 1..{n}", line=line_no)
            bags[bag_id] = frozenset(v - 1 for v in vertices)
            continue
        if len(parts) != 2:
            raise ParseError("tree edge must be 'a b'", line=line_no)
        a, b = _ints(parts, line_no)
        for x in (a, b):
            if not 1 <= x <= num_bags:
                raise ParseError(f"bag id {x} out of range 1..{num_bags}", line=line_no)
        edges.append((a - 1, b - 1))

    if header is None:
        raise ParseError("missing 's td' header")
    num_bags, declared_max, n = header
    if num_bags < 1:
        raise ParseError("a decomposition needs at least one bag")
    missing = sorted(set(range(1, num_bags + 1)) - set(bags))
    if missing:
        raise ParseError(f"bag {missing[0]} never defined")
    actual_max = max(len(b) for b in bags.values())
    if actual_max != declared_max:
        raise ParseError(f"declared max bag size {declared_max}, actual {actual_max}")
    if len(edges) != num_bags - 1:
        raise ParseError(f"{num_bags} bags need {num_bags - 1} tree edges, found {len(edges)}")
    ordered = [bags[i] for i in range(1, num_bags + 1)]
    try:
        decomposition = from_tree_edges(ordered, edges, 0)
    except InputError as exc:
        raise ParseError(str(exc)) from exc
    return decomposition, n


def emit_minor_model(model):
    document = MinorModelDocument(
        pattern=PatternDocument(n=model.pattern.num_vertices, edges=list(model.pattern.edges())),
        branch={x: sorted(branch) for x, branch in model.branch.items()},
    )
    return document.model_dump_json(indent=2) + "\n"


def parse_minor_model(text):
    try:
        document = MinorModelDocument.model_validate_json(text)
    except ValidationError as exc:
        raise ParseError(f"invalid minor model: {exc.errors()[0]['msg']}") from exc
    try:
        pattern = Graph.from_edges(document.pattern.n, document.pattern.edges)
    except InputError as exc:
        raise ParseError(f"invalid pattern: {exc}") from exc
    return MinorModel(pattern, {x: frozenset(vs) for x, vs in document.branch.items()})
