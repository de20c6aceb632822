# app/utils/formats.py
"""Line-oriented text codecs for graphs, partitions and drawings.

Canonical output sorts every body line, so writing a parsed canonical file
reproduces it byte for byte. `#` lines and blank lines are skipped on input.
"""
from __future__ import annotations

import re
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from app.errors import DomainError, ParseError
from app.geometry import Drawing, Point
from app.graph_core import Edge, Graph, VertexLabel, hypercube, make_edge

NumberedLine = Tuple[int, str]

_GRAPH_HEADER = re.compile(r"^graph width=(\d+)$")
_PARTITION_HEADER = re.compile(r"^partition k=(\d+) width=(\d+)$")
_PLANE_HEADER = re.compile(r"^plane (\d+) edges=(\d+)$")
_DRAWING_HEADER = re.compile(r"^drawing width=(\d+)$")


# ---------- shared helpers ----------

def numbered_lines(text: str, first_line: int = 1) -> List[NumberedLine]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=first_line):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((i, line))
    return out


def _label(token: str, width: int, line_no: int) -> VertexLabel:
    try:
        v = VertexLabel(token)
    except DomainError as exc:
        raise ParseError(str(exc), line_no) from None
    if v.width != width:
        raise ParseError(f"label {token} has width {v.width}, expected {width}", line_no)
    return v


def _int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line_no) from None


def _header(lines: Sequence[NumberedLine], pattern: "re.Pattern[str]", what: str) -> Tuple[int, "re.Match[str]"]:
    if not lines:
        raise ParseError(f"empty input, expected a {what} header")
    line_no, line = lines[0]
    match = pattern.match(line)
    if not match:
        raise ParseError(f"expected a {what} header, got {line!r}", line_no)
    return line_no, match


def _edge_lines(edges: Iterable[Edge]) -> List[str]:
    return sorted(f"{u} {v}" for u, v in edges)


# ---------- graph ----------

def format_graph(g: Graph) -> str:
    body = _edge_lines(g.edges) + [str(v) for v in g.vertices if not g.adjacency[v]]
    return "\n".join([f"graph width={g.width}"] + sorted(body)) + "\n"


def parse_graph(text: str) -> Graph:
    lines = numbered_lines(text)
    header_no, match = _header(lines, _GRAPH_HEADER, "graph")
    width = int(match.group(1))
    if width <= 0:
        raise ParseError("graph width must be positive", header_no)
    vertices: set = set()
    edges: set = set()
    for line_no, line in lines[1:]:
        tokens = line.split()
        if len(tokens) == 1:
            vertices.add(_label(tokens[0], width, line_no))
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v' or a single label, got {line!r}", line_no)
        u, v = (_label(t, width, line_no) for t in tokens)
        if u == v:
            raise ParseError(f"self-loop at {u}", line_no)
        e = make_edge(u, v)
        if e in edges:
            raise ParseError(f"duplicate edge {u} {v}", line_no)
        edges.add(e)
    return Graph.from_edges(edges, vertices)


# ---------- partition ----------

def format_partition(parts: Sequence[Iterable[Edge]], width: int) -> str:
    out = [f"partition k={len(parts)} width={width}"]
    for i, part in enumerate(parts, start=1):
        lines = _edge_lines(part)
        out.append(f"plane {i} edges={len(lines)}")
        out.extend(lines)
    return "\n".join(out) + "\n"


def parse_partition(text: str, host: Optional[Graph] = None) -> Tuple[Graph, List[List[Edge]]]:
    """Return (host, parts). The host defaults to the hypercube of the declared width.

    Part edges keep duplicates across planes so that verification can report
    them; a duplicate inside one plane is a parse error.
    """
    lines = numbered_lines(text)
    header_no, match = _header(lines, _PARTITION_HEADER, "partition")
    k, width = int(match.group(1)), int(match.group(2))
    if k <= 0:
        raise ParseError("partition needs at least one plane", header_no)
    if host is None:
        try:
            host = hypercube(width)
        except DomainError as exc:
            raise ParseError(str(exc), header_no) from None

    parts: List[List[Edge]] = []
    expected: List[Tuple[int, int]] = []
    seen_in_part: set = set()
    for line_no, line in lines[1:]:
        plane = _PLANE_HEADER.match(line)
        if plane:
            index, count = int(plane.group(1)), int(plane.group(2))
            if index != len(parts) + 1:
                raise ParseError(f"expected plane {len(parts) + 1}, got plane {index}", line_no)
            parts.append([])
            expected.append((line_no, count))
            seen_in_part = set()
            continue
        if not parts:
            raise ParseError("edge line before the first plane header", line_no)
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", line_no)
        u, v = (_label(t, width, line_no) for t in tokens)
        if u == v:
            raise ParseError(f"self-loop at {u}", line_no)
        e = make_edge(u, v)
        if e not in host.edges:
            raise ParseError(f"{u} {v} is not an edge of the host graph", line_no)
        if e in seen_in_part:
            raise ParseError(f"duplicate edge {u} {v} in plane {len(parts)}", line_no)
        seen_in_part.add(e)
        parts[-1].append(e)

    if len(parts) != k:
        raise ParseError(f"header declares {k} planes, found {len(parts)}", header_no)
    for (line_no, count), part in zip(expected, parts):
        if count != len(part):
            raise ParseError(f"plane header declares {count} edges, found {len(part)}", line_no)
    return host, parts


# ---------- drawing ----------

def format_drawing(d: Drawing) -> str:
    out = [f"drawing width={d.width}"]
    for v in d.graph.sorted_vertices():
        p = d.position[v]
        out.append(f"v {v} {p.x} {p.y}")
    for e in d.graph.sorted_edges():
        tokens = ["e", str(e[0]), str(e[1])]
        for b in d.route.get(e, ()):
            tokens += [str(b.x), str(b.y)]
        out.append(" ".join(tokens))
    return "\n".join(out) + "\n"


def parse_drawing_lines(lines: Sequence[NumberedLine]) -> Drawing:
    header_no, match = _header(lines, _DRAWING_HEADER, "drawing")
    width = int(match.group(1))
    position: Dict[VertexLabel, Point] = {}
    route: Dict[Edge, Tuple[Point, ...]] = {}
    for line_no, line in lines[1:]:
        tokens = line.split()
        kind = tokens[0]
        if kind == "v":
            if len(tokens) != 4:
                raise ParseError(f"expected 'v <label> <x> <y>', got {line!r}", line_no)
            v = _label(tokens[1], width, line_no)
            if v in position:
                raise ParseError(f"duplicate vertex line for {v}", line_no)
            position[v] = Point(_int(tokens[2], line_no), _int(tokens[3], line_no))
        elif kind == "e":
            if len(tokens) < 3 or (len(tokens) - 3) % 2:
                raise ParseError(f"expected 'e <u> <v> [<x> <y>]*', got {line!r}", line_no)
            u, v = _label(tokens[1], width, line_no), _label(tokens[2], width, line_no)
            for w in (u, v):
                if w not in position:
                    raise ParseError(f"edge line names unknown vertex {w}", line_no)
            if u == v:
                raise ParseError(f"self-loop at {u}", line_no)
            coords = [_int(t, line_no) for t in tokens[3:]]
            bends = tuple(Point(coords[i], coords[i + 1]) for i in range(0, len(coords), 2))
            e = make_edge(u, v)
            if e in route:
                raise ParseError(f"duplicate edge line for {u} {v}", line_no)
            route[e] = bends if e[0] == u else tuple(reversed(bends))
        else:
            raise ParseError(f"unknown line kind {kind!r}", line_no)
    try:
        return Drawing(Graph(frozenset(position), frozenset(route)), position, route)
    except DomainError as exc:
        raise ParseError(f"invalid drawing: {exc}", header_no) from None


def parse_drawing(text: str) -> Drawing:
    return parse_drawing_lines(numbered_lines(text))


def split_blocks(lines: Sequence[NumberedLine], starts: Iterable[str]) -> Iterator[List[NumberedLine]]:
    """Split numbered lines into blocks, each opening with a line that starts with one of `starts`."""
    prefixes = tuple(starts)
    block: List[NumberedLine] = []
    for item in lines:
        if item[1].startswith(prefixes) and block:
            yield block
            block = []
        block.append(item)
    if block:
        yield block
