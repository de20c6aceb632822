# app/geometry.py
"""Integer-grid drawings and exact crossing counting.

All predicates are sign tests on integer determinants. Coordinates up to
EXACT_INT64_LIMIT are evaluated in int64 numpy arrays (every determinant
stays below 2^62); larger drawings fall back to object arrays of Python
ints, which are slower but still exact.
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, NamedTuple, Sequence, Tuple

import numpy as np

from app.errors import DegenerateGeometryError, DomainError
from app.graph_core import Edge, Graph, VertexLabel, VertexMap, format_edge, make_edge
from app.models import VerificationReport
from app.utils.bands import stack_bands

logger = logging.getLogger(__name__)

COORD_LIMIT = 1 << 30
EXACT_INT64_LIMIT = 1 << 29
PAIR_BLOCK_ELEMENTS = 1 << 20    # rows x columns evaluated per vectorised block
MAX_REPORTED_FAILURES = 10


class Point(NamedTuple):
    x: int
    y: int


# ============================================================
#   DRAWINGS
# ============================================================

@dataclass(frozen=True)
class Drawing:
    """Vertex positions plus one polyline per edge.

    route[e] holds the bend points of e = (u, v) in order from u to v.
    """

    graph: Graph
    position: Mapping[VertexLabel, Point]
    route: Mapping[Edge, Tuple[Point, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        position = {v: Point(int(p[0]), int(p[1])) for v, p in self.position.items()}
        route = {e: tuple(Point(int(b[0]), int(b[1])) for b in bends) for e, bends in self.route.items()}
        for e in self.graph.edges:
            route.setdefault(e, ())
        object.__setattr__(self, "position", position)
        object.__setattr__(self, "route", route)

        if set(position) != self.graph.vertices:
            missing = self.graph.vertices - set(position)
            if missing:
                raise DomainError(f"vertex {min(missing)} has no position")
            raise DomainError(f"position given for unknown vertex {min(set(position) - self.graph.vertices)}")
        if len(set(position.values())) != len(position):
            dup = next(p for p, n in Counter(position.values()).items() if n > 1)
            raise DomainError(f"two vertices share position ({dup.x}, {dup.y})")
        extra = set(route) - self.graph.edges
        if extra:
            raise DomainError(f"route given for non-edge {format_edge(min(extra))}")
        for e in self.graph.edges:
            pts = self.polyline(e)
            for p in pts:
                if abs(p.x) > COORD_LIMIT or abs(p.y) > COORD_LIMIT:
                    raise DomainError(f"point ({p.x}, {p.y}) on {format_edge(e)} exceeds coordinate limit")
            for a, b in zip(pts, pts[1:]):
                if a == b:
                    raise DomainError(f"edge {format_edge(e)} repeats point ({a.x}, {a.y}) consecutively")

    @classmethod
    def straight(cls, graph: Graph, position: Mapping[VertexLabel, Tuple[int, int]]) -> "Drawing":
        return cls(graph, {v: Point(*p) for v, p in position.items()}, {})

    @property
    def width(self) -> int:
        return self.graph.width

    def polyline(self, e: Edge) -> Tuple[Point, ...]:
        return (self.position[e[0]],) + tuple(self.route.get(e, ())) + (self.position[e[1]],)

    def bend_count(self) -> int:
        return sum(len(b) for b in self.route.values())

    def points(self) -> List[Point]:
        return list(self.position.values()) + [b for bends in self.route.values() for b in bends]

    def bounding_box(self) -> Tuple[int, int, int, int]:
        pts = self.points()
        if not pts:
            return (0, 0, 0, 0)
        xs = [p.x for p in pts]
        ys = [p.y for p in pts]
        return (min(xs), min(ys), max(xs), max(ys))

    def transform(self, fn: Callable[[Point], Tuple[int, int]]) -> "Drawing":
        return Drawing(
            self.graph,
            {v: Point(*fn(p)) for v, p in self.position.items()},
            {e: tuple(Point(*fn(b)) for b in bends) for e, bends in self.route.items()},
        )

    def translate(self, dx: int, dy: int) -> "Drawing":
        return self.transform(lambda p: (p.x + dx, p.y + dy))

    def relabel(self, m: VertexMap) -> "Drawing":
        """Same picture, new names. Bends are reversed when the canonical orientation flips."""
        route = {}
        for (u, v), bends in self.route.items():
            mu, mv = m(u), m(v)
            e = make_edge(mu, mv)
            route[e] = tuple(bends) if e[0] == mu else tuple(reversed(bends))
        graph = Graph(frozenset(m(v) for v in self.graph.vertices), frozenset(route))
        return Drawing(graph, {m(v): p for v, p in self.position.items()}, route)

    def without_edge(self, e: Edge) -> "Drawing":
        return Drawing(
            self.graph.without_edge(e),
            self.position,
            {f: b for f, b in self.route.items() if f != e},
        )


@dataclass(frozen=True)
class CrossingCount:
    total: int
    per_pair: List[Tuple[Edge, Edge, int]] = field(default_factory=list)
    goodness_warnings: List[str] = field(default_factory=list)


# ============================================================
#   SCALAR PREDICATES
# ============================================================

def _orient(a: Point, b: Point, c: Point) -> int:
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (det > 0) - (det < 0)


def _projections_overlap(a1: Point, a2: Point, b1: Point, b2: Point) -> bool:
    ox = min(max(a1[0], a2[0]), max(b1[0], b2[0])) - max(min(a1[0], a2[0]), min(b1[0], b2[0]))
    oy = min(max(a1[1], a2[1]), max(b1[1], b2[1])) - max(min(a1[1], a2[1]), min(b1[1], b2[1]))
    return ox > 0 or oy > 0


def segments_properly_cross(a1: Point, a2: Point, b1: Point, b2: Point) -> bool:
    """True iff the open segments a1a2 and b1b2 meet in a single transversal point."""
    if a1 == a2 or b1 == b2:
        raise DomainError("segment endpoints must be distinct")
    o1, o2 = _orient(a1, a2, b1), _orient(a1, a2, b2)
    o3, o4 = _orient(b1, b2, a1), _orient(b1, b2, a2)
    if o1 == 0 and o2 == 0 and _projections_overlap(a1, a2, b1, b2):
        raise DegenerateGeometryError(
            f"segments ({a1.x}, {a1.y})-({a2.x}, {a2.y}) and ({b1.x}, {b1.y})-({b2.x}, {b2.y}) "
            "overlap collinearly"
        )
    return o1 * o2 < 0 and o3 * o4 < 0


def crossing_point(a1: Point, a2: Point, b1: Point, b2: Point) -> Tuple[Fraction, Fraction]:
    dx, dy = a2[0] - a1[0], a2[1] - a1[1]
    ex, ey = b2[0] - b1[0], b2[1] - b1[1]
    den = dx * ey - dy * ex
    t = Fraction((b1[0] - a1[0]) * ey - (b1[1] - a1[1]) * ex, den)
    return (a1[0] + t * dx, a1[1] + t * dy)


# ============================================================
#   SEGMENT TABLES (vectorised)
# ============================================================

@dataclass
class _SegmentTable:
    edges: List[Edge]
    owner: np.ndarray      # edge index per segment
    p: List[Tuple[Point, Point]]
    ax: np.ndarray
    ay: np.ndarray
    bx: np.ndarray
    by: np.ndarray


def _coord_dtype(d: Drawing):
    lo, lo_y, hi, hi_y = d.bounding_box()
    extent = max(abs(lo), abs(lo_y), abs(hi), abs(hi_y))
    return np.int64 if extent <= EXACT_INT64_LIMIT else object


def _segment_table(d: Drawing) -> _SegmentTable:
    edges = d.graph.sorted_edges()
    owner, segs = [], []
    for i, e in enumerate(edges):
        pts = d.polyline(e)
        for a, b in zip(pts, pts[1:]):
            owner.append(i)
            segs.append((a, b))
    dtype = _coord_dtype(d)

    def col(k: int, c: int) -> np.ndarray:
        return np.array([s[k][c] for s in segs], dtype=dtype)

    return _SegmentTable(
        edges=edges,
        owner=np.array(owner, dtype=np.int64),
        p=segs,
        ax=col(0, 0), ay=col(0, 1), bx=col(1, 0), by=col(1, 1),
    )


def _sign(v: np.ndarray) -> np.ndarray:
    return (v > 0).astype(np.int8) - (v < 0).astype(np.int8)


def orient_arrays(px, py, qx, qy, rx, ry) -> np.ndarray:
    return _sign((qx - px) * (ry - py) - (qy - py) * (rx - px))


def _row_blocks(rows: int, cols: int) -> Iterator[Tuple[int, int]]:
    step = max(1, PAIR_BLOCK_ELEMENTS // max(cols, 1))
    for start in range(0, rows, step):
        yield start, min(start + step, rows)


def _scan_segment_pairs(t: _SegmentTable) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """All (i, j), i < j, that properly cross, and all that overlap collinearly."""
    m = len(t.p)
    cross_i, cross_j, over_i, over_j = [], [], [], []
    cols = np.arange(m)
    for start, stop in _row_blocks(m, m):
        rows = slice(start, stop)
        ax, ay = t.ax[rows, None], t.ay[rows, None]
        bx, by = t.bx[rows, None], t.by[rows, None]
        cx, cy, dx, dy = t.ax[None, :], t.ay[None, :], t.bx[None, :], t.by[None, :]
        upper = cols[None, :] > np.arange(start, stop)[:, None]

        o1 = orient_arrays(ax, ay, bx, by, cx, cy)
        o2 = orient_arrays(ax, ay, bx, by, dx, dy)
        o3 = orient_arrays(cx, cy, dx, dy, ax, ay)
        o4 = orient_arrays(cx, cy, dx, dy, bx, by)
        crossing = upper & (o1 * o2 < 0) & (o3 * o4 < 0)

        overlap_x = np.minimum(np.maximum(ax, bx), np.maximum(cx, dx)) - np.maximum(
            np.minimum(ax, bx), np.minimum(cx, dx)
        )
        overlap_y = np.minimum(np.maximum(ay, by), np.maximum(cy, dy)) - np.maximum(
            np.minimum(ay, by), np.minimum(cy, dy)
        )
        collinear = upper & (o1 == 0) & (o2 == 0) & ((overlap_x > 0) | (overlap_y > 0))

        ci, cj = np.nonzero(crossing)
        cross_i.append(ci + start)
        cross_j.append(cj)
        oi, oj = np.nonzero(collinear)
        over_i.append(oi + start)
        over_j.append(oj)

    def cat(parts: List[np.ndarray]) -> np.ndarray:
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    return cat(cross_i), cat(cross_j), cat(over_i), cat(over_j)


def _points_on_segments(points: Sequence[Point], t: _SegmentTable, dtype) -> List[Tuple[int, int]]:
    """(point index, segment index) for points in a segment's interior."""
    if not points or not t.p:
        return []
    px_all = np.array([p.x for p in points], dtype=dtype)
    py_all = np.array([p.y for p in points], dtype=dtype)
    hits: List[Tuple[int, int]] = []
    for start, stop in _row_blocks(len(points), len(t.p)):
        px, py = px_all[start:stop, None], py_all[start:stop, None]
        ax, ay, bx, by = t.ax[None, :], t.ay[None, :], t.bx[None, :], t.by[None, :]
        on_line = orient_arrays(ax, ay, bx, by, px, py) == 0
        inside = (
            (px >= np.minimum(ax, bx)) & (px <= np.maximum(ax, bx))
            & (py >= np.minimum(ay, by)) & (py <= np.maximum(ay, by))
        )
        endpoint = ((px == ax) & (py == ay)) | ((px == bx) & (py == by))
        pi, si = np.nonzero(on_line & inside & ~endpoint)
        hits.extend(zip((pi + start).tolist(), si.tolist()))
    return hits


def _fmt(p: Point) -> str:
    return f"({p.x}, {p.y})"


def _summarise(found: List[str]) -> str:
    shown = "; ".join(found[:MAX_REPORTED_FAILURES])
    if len(found) > MAX_REPORTED_FAILURES:
        shown += f"; ... {len(found) - MAX_REPORTED_FAILURES} more"
    return shown


# ============================================================
#   VALIDATION AND COUNTING
# ============================================================

def validate_general_position(d: Drawing) -> VerificationReport:
    report = VerificationReport()
    t = _segment_table(d)
    dtype = _coord_dtype(d)

    # bends must not coincide with vertices or with each other
    owners: Dict[Point, List[str]] = defaultdict(list)
    for v, p in d.position.items():
        owners[p].append(f"vertex {v}")
    for e in t.edges:
        for b in d.route.get(e, ()):
            owners[b].append(f"bend of {format_edge(e)}")
    clashes = [f"{_fmt(p)} used by {', '.join(sorted(who))}" for p, who in sorted(owners.items()) if len(who) > 1]
    report.add("distinct-points", not clashes, _summarise(clashes) if clashes else "all points distinct")

    vertices = d.graph.sorted_vertices()
    vertex_points = [d.position[v] for v in vertices]
    through = [
        f"{format_edge(t.edges[t.owner[s]])} passes through vertex {vertices[i]} at {_fmt(vertex_points[i])}"
        for i, s in _points_on_segments(vertex_points, t, dtype)
    ]
    report.add("segment-through-vertex", not through, _summarise(through) if through else "none")

    bends = [(e, b) for e in t.edges for b in d.route.get(e, ())]
    on_seg = [
        f"bend {_fmt(bends[i][1])} of {format_edge(bends[i][0])} lies on {format_edge(t.edges[t.owner[s]])}"
        for i, s in _points_on_segments([b for _, b in bends], t, dtype)
    ]
    report.add("bend-on-segment", not on_seg, _summarise(on_seg) if on_seg else "none")

    ci, cj, oi, oj = _scan_segment_pairs(t)
    overlaps = [
        f"{format_edge(t.edges[t.owner[i]])} {_fmt(t.p[i][0])}-{_fmt(t.p[i][1])} overlaps "
        f"{format_edge(t.edges[t.owner[j]])} {_fmt(t.p[j][0])}-{_fmt(t.p[j][1])}"
        for i, j in zip(oi.tolist(), oj.tolist())
    ]
    report.add("collinear-overlap", not overlaps, _summarise(overlaps) if overlaps else "none")

    through_point: Dict[Tuple[Fraction, Fraction], set] = defaultdict(set)
    for i, j in zip(ci.tolist(), cj.tolist()):
        x = crossing_point(t.p[i][0], t.p[i][1], t.p[j][0], t.p[j][1])
        through_point[x].update((i, j))
    concurrent = [
        f"{len(segs)} segments meet at ({x}, {y})"
        for (x, y), segs in sorted(through_point.items())
        if len(segs) >= 3
    ]
    report.add("concurrent-crossings", not concurrent, _summarise(concurrent) if concurrent else "none")
    return report


def count_crossings(d: Drawing) -> CrossingCount:
    report = validate_general_position(d)
    if not report.overall:
        names = ", ".join(c.name for c in report.failed())
        raise DegenerateGeometryError(
            f"drawing is not in general position (validate_general_position failed: {names})", report
        )
    t = _segment_table(d)
    ci, cj, _, _ = _scan_segment_pairs(t)
    ei, ej = t.owner[ci], t.owner[cj]
    distinct = ei != ej
    pairs = Counter(
        (min(a, b), max(a, b)) for a, b in zip(ei[distinct].tolist(), ej[distinct].tolist())
    )

    per_pair = []
    warnings = []
    for (a, b), n in sorted(pairs.items()):
        e, f = t.edges[a], t.edges[b]
        per_pair.append((e, f, n))
        if set(e) & set(f):
            warnings.append(f"adjacent edges {format_edge(e)} and {format_edge(f)} cross")
        if n > 1:
            warnings.append(f"edges {format_edge(e)} and {format_edge(f)} cross {n} times")
    for w in warnings:
        logger.debug("goodness: %s", w)
    return CrossingCount(total=sum(n for _, _, n in per_pair), per_pair=per_pair, goodness_warnings=warnings)


def count_crossings_bruteforce(d: Drawing) -> int:
    """Plain double loop over segment pairs; the reference for count_crossings."""
    segs = []
    for e in d.graph.sorted_edges():
        pts = d.polyline(e)
        segs.extend((e, a, b) for a, b in zip(pts, pts[1:]))
    total = 0
    for i in range(len(segs)):
        e, a1, a2 = segs[i]
        for j in range(i + 1, len(segs)):
            f, b1, b2 = segs[j]
            if e != f and segments_properly_cross(a1, a2, b1, b2):
                total += 1
    return total


# ============================================================
#   ASSEMBLY
# ============================================================

def _diameter(d: Drawing) -> int:
    x0, y0, x1, y1 = d.bounding_box()
    return max(x1 - x0, y1 - y0)


def disjoint_union_layout(parts: Sequence[Drawing]) -> Drawing:
    """Stack vertex-disjoint drawings in horizontal bands.

    Consecutive bounding boxes are separated by at least twice the largest
    part diameter, so no segment of one part can reach another.
    """
    seen: set = set()
    for i, part in enumerate(parts, start=1):
        clash = seen & part.graph.vertices
        if clash:
            raise DomainError(f"part {i} reuses vertex {min(clash)}")
        seen |= part.graph.vertices
    if not parts:
        return Drawing(Graph(frozenset(), frozenset()), {}, {})

    margin = max(2 * max(_diameter(p) for p in parts), 2)
    boxes = [p.bounding_box() for p in parts]
    offsets = stack_bands([(b[2] - b[0], b[3] - b[1]) for b in boxes], margin)

    position: Dict[VertexLabel, Point] = {}
    route: Dict[Edge, Tuple[Point, ...]] = {}
    for part, box, (ox, oy) in zip(parts, boxes, offsets):
        moved = part.translate(ox - box[0], oy - box[1])
        position.update(moved.position)
        route.update(moved.route)
    graph = Graph(
        frozenset().union(*(p.graph.vertices for p in parts)),
        frozenset().union(*(p.graph.edges for p in parts)),
    )
    return Drawing(graph, position, route)
