# app/layouts.py
"""Constructive low-crossing drawings used as shipped fixtures.

A depleted 5-cube is a 2 x 4 x 4 grid graph: four 8-cycles ("rings", one per
value of the two middle suffix bits, taken in Gray order) joined by radial
edges, plus two chords per ring. Rings are drawn as nested squares with the
chords of the inner ring straight and every outer chord routed around its
ring, which costs four crossings on each of the two middle rings.

Q4 is drawn as four nested diamonds, one per value of its first two bits,
with the four ring-1 to ring-4 edges bent past the two middle diamonds
(two crossings each).
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from app.construction import (
    DepletedCubeSpec,
    baseline_partition,
    build_biplanar_partition,
    complement_partner,
    depleted_cube,
    depleted_cube_specs,
    sigma_map,
)
from app.errors import ConstructionError
from app.geometry import Drawing, Point
from app.graph_core import (
    Edge,
    Graph,
    VertexLabel,
    VertexMap,
    complement_map,
    connected_components,
    hypercube,
    make_edge,
)
from app.models import CubeType


GRAY_2BIT = ("00", "01", "11", "10")
# Gray order with the second bit flipped, for prefixes whose third bit is set
_RING_ORDER_FLIPPED = ("01", "00", "10", "11")
RING_SPACING = 20
CHORD_OFFSET = (10, 5)

# octagon slots: (member, suffix bits s3 s4) in ring order
_RING_SLOTS = (("a", "10"), ("a", "00"), ("b", "00"), ("b", "10"),
               ("b", "11"), ("b", "01"), ("a", "01"), ("a", "11"))
_RING_DIRECTIONS = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))

DIAMOND_SPACING = 10
_DIAMOND_DIRECTIONS = ((1, 0), (0, 1), (-1, 0), (0, -1))
_CLOSING_BEND = (25, 6)


# ============================================================
#   DEPLETED 5-CUBES
# ============================================================

def ring_layout(pair: Tuple[VertexLabel, VertexLabel]) -> Drawing:
    """Eight-crossing drawing of the Type-1 cube on `pair`.

    Rings follow the middle suffix bits in the order the cube links them:
    the leading suffix bit only flips on one value of the second.
    """
    a, b = sorted(pair)
    prefix = {"a": a.bits, "b": b.bits}
    position: Dict[VertexLabel, Point] = {}
    slots: Dict[Tuple[int, str, str], VertexLabel] = {}
    middles = GRAY_2BIT if a.bits[2] == "0" else _RING_ORDER_FLIPPED
    for k, middle in enumerate(middles, start=1):
        radius = RING_SPACING * k
        for (member, tail), (dx, dy) in zip(_RING_SLOTS, _RING_DIRECTIONS):
            v = VertexLabel(prefix[member] + middle + tail)
            position[v] = Point(radius * dx, radius * dy)
            slots[(k, member, tail)] = v

    edges: List[Edge] = []
    route: Dict[Edge, Tuple[Point, ...]] = {}
    for k in range(1, 5):
        for p in range(8):
            edges.append(make_edge(slots[(k, *_RING_SLOTS[p])], slots[(k, *_RING_SLOTS[(p + 1) % 8])]))
            if k < 4:
                edges.append(make_edge(slots[(k, *_RING_SLOTS[p])], slots[(k + 1, *_RING_SLOTS[p])]))
        radius = RING_SPACING * k
        ox, oy = CHORD_OFFSET
        for member, side in (("a", 1), ("b", -1)):
            chord = make_edge(slots[(k, member, "00")], slots[(k, member, "01")])
            edges.append(chord)
            if k > 1:
                route[chord] = (
                    Point(side * (radius + ox), radius + oy),
                    Point(side * (radius + ox), -(radius + oy)),
                )
    return Drawing(Graph.from_edges(edges), position, route)


def depleted_cube_layout(spec: DepletedCubeSpec) -> Drawing:
    """Ring layout of any depleted cube; Type 2 is the complement of its Type-1 partner."""
    if spec.cube_type == CubeType.TYPE1:
        drawing = ring_layout(spec.pair)
    else:
        partner = ring_layout(complement_partner(spec).pair)
        drawing = partner.relabel(complement_map(partner.graph.vertices))
    if drawing.graph.edges != depleted_cube(spec).edges:
        raise ConstructionError(
            f"ring layout does not match the {spec.cube_type.value} cube on "
            f"({spec.pair[0]}, {spec.pair[1]})"
        )
    return drawing


# ============================================================
#   Q4
# ============================================================

def _quarter_turns(p: Point, turns: int) -> Point:
    for _ in range(turns % 4):
        p = Point(-p.y, p.x)
    return p


def q4_layout() -> Drawing:
    """Eight-crossing drawing of Q4 on width-4 labels."""
    position: Dict[VertexLabel, Point] = {}
    for k, outer in enumerate(GRAY_2BIT, start=1):
        radius = DIAMOND_SPACING * k
        for inner, (dx, dy) in zip(GRAY_2BIT, _DIAMOND_DIRECTIONS):
            position[VertexLabel(outer + inner)] = Point(radius * dx, radius * dy)

    edges: List[Edge] = []
    route: Dict[Edge, Tuple[Point, ...]] = {}
    for k, outer in enumerate(GRAY_2BIT):
        for q, inner in enumerate(GRAY_2BIT):
            v = VertexLabel(outer + inner)
            edges.append(make_edge(v, VertexLabel(outer + GRAY_2BIT[(q + 1) % 4])))
            if k < 3:
                edges.append(make_edge(v, VertexLabel(GRAY_2BIT[k + 1] + inner)))
    for q, inner in enumerate(GRAY_2BIT):
        closing = make_edge(VertexLabel(GRAY_2BIT[0] + inner), VertexLabel(GRAY_2BIT[3] + inner))
        edges.append(closing)
        route[closing] = (_quarter_turns(Point(*_CLOSING_BEND), q),)
    drawing = Drawing(Graph.from_edges(edges), position, route)
    if drawing.graph.edges != hypercube(4).edges:
        raise ConstructionError("diamond layout does not match Q4")
    return drawing


def embedded_q4_layout(prefix: str = "", suffix: str = "") -> Drawing:
    """Q4 drawing relabelled x -> prefix + x + suffix."""
    base = q4_layout()
    m = VertexMap.from_function(base.graph.vertices, lambda v: VertexLabel(prefix + v.bits + suffix))
    return base.relabel(m)


# ============================================================
#   FIXTURE SETS
# ============================================================

def _sorted_components(drawings: Sequence[Drawing]) -> List[Drawing]:
    return sorted(drawings, key=lambda d: min(d.graph.vertices))


def biplanar_fixture_drawings() -> List[List[Drawing]]:
    """[plane 1 components, plane 2 components]; plane 2 is the sigma image of plane 1."""
    plane1 = _sorted_components([depleted_cube_layout(s) for s in depleted_cube_specs()])
    plane2 = [d.relabel(sigma_map(d.graph.vertices)) for d in plane1]
    return [plane1, plane2]


def baseline_fixture_drawings() -> List[List[Drawing]]:
    """Sixteen Q4 drawings per plane for the prefix/suffix split."""
    suffixes = [VertexLabel.from_int(i, 4).bits for i in range(16)]
    plane1 = [embedded_q4_layout(suffix=t) for t in suffixes]
    plane2 = [d.relabel(sigma_map(d.graph.vertices)) for d in plane1]
    return [plane1, plane2]


def fixture_partition_components(baseline: bool = False) -> List[List[Graph]]:
    """Component graphs of each plane, in the order fixture files are numbered."""
    p = baseline_partition() if baseline else build_biplanar_partition()
    return [connected_components(Graph.from_edges(part)) for part in p.parts]
