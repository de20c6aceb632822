# app/construction.py
"""The biplanar partition of Q8 built from the two depleted-cube tables.

A depleted n-cube is read here as a spanning subgraph of Q_n: its vertex set
is all of {0,1}^n and only some hypercube edges are kept. Tables are treated
purely as edge sets.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from app.errors import ConstructionError, DomainError
from app.graph_core import (
    Edge,
    Graph,
    VertexLabel,
    VertexMap,
    apply_vertex_map,
    are_isomorphic,
    complement_map,
    connected_components,
    format_edge,
    hamming_distance,
    hypercube,
    make_edge,
    verify_isomorphism,
)
from app.models import CubeType, VerificationReport

logger = logging.getLogger(__name__)

Q8_EDGE_COUNT = 1024
PLANE_EDGE_COUNT = 512


# ============================================================
#   VERTEX CLASSES AND PAIRS
# ============================================================

C1_LISTING = ("0000", "1000", "0010", "1010", "0011", "1011", "0001", "1001")
C2_LISTING = ("0111", "1111", "0101", "1101", "0100", "1100", "0110", "1110")

P1_LISTING = (("0000", "1000"), ("0010", "1010"), ("0011", "1011"), ("0001", "1001"))
P2_LISTING = (("0111", "1111"), ("0101", "1101"), ("0100", "1100"), ("0110", "1110"))


@dataclass(frozen=True)
class PairSet:
    pairs: Tuple[Tuple[VertexLabel, VertexLabel], ...]

    def __post_init__(self) -> None:
        labels = [v for pair in self.pairs for v in pair]
        if len(set(labels)) != len(labels):
            raise DomainError("pair set labels are not distinct")
        for a, b in self.pairs:
            if a.width != 4 or b.width != 4:
                raise DomainError(f"pair ({a}, {b}) is not width 4")
            if hamming_distance(a, b) != 1 or a.bits[0] == b.bits[0]:
                raise DomainError(f"pair ({a}, {b}) does not differ in exactly the first bit")

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class DepletedCubeSpec:
    cube_type: CubeType
    pair: Tuple[VertexLabel, VertexLabel]

    def __post_init__(self) -> None:
        p1, p2 = pair_sets()
        allowed = p1 if self.cube_type == CubeType.TYPE1 else p2
        if tuple(self.pair) not in allowed:
            raise DomainError(
                f"pair ({self.pair[0]}, {self.pair[1]}) is not a {self.cube_type.value} pair"
            )
        object.__setattr__(self, "pair", tuple(self.pair))


def _labels(listing: Iterable[str]) -> Tuple[VertexLabel, ...]:
    return tuple(VertexLabel(s) for s in listing)


def c1_c2_sets() -> Tuple[FrozenSet[VertexLabel], FrozenSet[VertexLabel]]:
    return frozenset(_labels(C1_LISTING)), frozenset(_labels(C2_LISTING))


def pair_sets() -> Tuple[PairSet, PairSet]:
    return (
        PairSet(tuple(tuple(_labels(p)) for p in P1_LISTING)),
        PairSet(tuple(tuple(_labels(p)) for p in P2_LISTING)),
    )


def depleted_cube_specs() -> List[DepletedCubeSpec]:
    p1, p2 = pair_sets()
    return [DepletedCubeSpec(CubeType.TYPE1, p) for p in p1] + [
        DepletedCubeSpec(CubeType.TYPE2, p) for p in p2
    ]


# ============================================================
#   TABLES
# ============================================================

# Rows 1-3: suffix patterns with a free bit "b", expanded over b and both pair members.
_CUBE_ROWS = (
    ("b000", "b001"), ("b000", "b100"), ("b100", "b101"), ("b001", "b101"),
    ("b010", "b011"), ("b010", "b110"), ("b110", "b111"), ("b011", "b111"),
    ("b000", "b010"), ("b001", "b011"), ("b100", "b110"), ("b101", "b111"),
)

# Row 4: literal suffixes, expanded over both pair members. The two listed
# patterns flip the leading suffix bit where the second suffix bit is 1 or 0.
# Which one a pair uses follows the third bit of its prefix: printed per cube
# type, the tables put 64 plane-1 edges into their own prefix/suffix swap.
_ROW4_SECOND_BIT_SET = (("0101", "1101"), ("0111", "1111"), ("0110", "1110"), ("0100", "1100"))
_ROW4_SECOND_BIT_CLEAR = (("0011", "1011"), ("0001", "1001"), ("0000", "1000"), ("0010", "1010"))


def row4_patterns(pair: Tuple[VertexLabel, VertexLabel]) -> Tuple[Tuple[str, str], ...]:
    return _ROW4_SECOND_BIT_SET if pair[0].bits[2] == "0" else _ROW4_SECOND_BIT_CLEAR


# Rows 5-6: suffixes s giving the edge (first-s, second-s).
_PAIR_ROWS = {
    CubeType.TYPE1: ("0000", "0100", "1100", "1000", "1001", "1101", "0101", "0001"),
    CubeType.TYPE2: ("0110", "0111", "0011", "1011", "1111", "1110", "1010", "0010"),
}


def depleted_cube(spec: DepletedCubeSpec, row4: Optional[Sequence[Tuple[str, str]]] = None) -> Graph:
    """Expand the table rows for one pair. `row4` overrides the row-4 patterns."""
    first, second = spec.pair
    edges = set()
    for c in (first, second):
        for b in "01":
            for s, t in _CUBE_ROWS:
                edges.add(make_edge(VertexLabel(c.bits + s.replace("b", b)),
                                    VertexLabel(c.bits + t.replace("b", b))))
        for s, t in (row4 if row4 is not None else row4_patterns(spec.pair)):
            edges.add(make_edge(VertexLabel(c.bits + s), VertexLabel(c.bits + t)))
    for s in _PAIR_ROWS[spec.cube_type]:
        edges.add(make_edge(VertexLabel(first.bits + s), VertexLabel(second.bits + s)))

    cube = Graph.from_edges(edges)
    if len(cube.edges) != 64 or len(cube.vertices) != 32:
        raise ConstructionError(
            f"{spec.cube_type.value} cube {first}/{second} expanded to "
            f"{len(cube.edges)} edges on {len(cube.vertices)} vertices"
        )
    bad = [e for e in cube.edges if hamming_distance(*e) != 1]
    if bad:
        raise ConstructionError(f"non-hypercube edge {format_edge(bad[0])}")
    return cube


def complement_partner(spec: DepletedCubeSpec) -> DepletedCubeSpec:
    """The cube of the other type whose pair is the bitwise complement of spec's pair."""
    a, b = (v.complement() for v in spec.pair)
    other = CubeType.TYPE2 if spec.cube_type == CubeType.TYPE1 else CubeType.TYPE1
    p1, p2 = pair_sets()
    for pair in (p2 if other == CubeType.TYPE2 else p1):
        if set(pair) == {a, b}:
            return DepletedCubeSpec(other, pair)
    raise ConstructionError(f"no complement partner for pair ({spec.pair[0]}, {spec.pair[1]})")


def check_complement_symmetry() -> bool:
    """Bitwise complement sends every Type-1 cube onto its complement-pair Type-2 cube."""
    for spec in depleted_cube_specs():
        if spec.cube_type != CubeType.TYPE1:
            continue
        cube = depleted_cube(spec)
        image = apply_vertex_map(cube, complement_map(cube.vertices))
        if image.edges != depleted_cube(complement_partner(spec)).edges:
            return False
    return True


# ============================================================
#   RHO AND SIGMA
# ============================================================

def sigma(v: VertexLabel) -> VertexLabel:
    if v.width != 8:
        raise DomainError(f"sigma needs a width-8 label, got width {v.width}")
    return VertexLabel(v.bits[4:] + v.bits[:4])


def sigma_map(vertices: Iterable[VertexLabel]) -> VertexMap:
    return VertexMap.from_function(vertices, sigma)


def rho(e: Tuple[VertexLabel, VertexLabel]) -> Edge:
    u, v = e
    if u.width != 8 or v.width != 8:
        raise DomainError("rho needs width-8 endpoints")
    if hamming_distance(u, v) != 1:
        raise DomainError(f"({u}, {v}) is not a Q8 edge")
    return make_edge(sigma(u), sigma(v))


# ============================================================
#   PARTITIONS
# ============================================================

@dataclass(frozen=True)
class EdgePartition:
    """An ordered list of edge sets over a host graph.

    Only "every part edge is a host edge" is enforced on construction;
    disjointness and completeness are reported by `problems()` so that
    corrupted inputs can still be loaded and verified.
    """

    host: Graph
    parts: Tuple[FrozenSet[Edge], ...]

    def __post_init__(self) -> None:
        parts = tuple(frozenset(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        for i, part in enumerate(parts, start=1):
            stray = part - self.host.edges
            if stray:
                raise DomainError(f"plane {i} holds non-host edge {format_edge(min(stray))}")

    @property
    def k(self) -> int:
        return len(self.parts)

    def part_graph(self, index: int) -> Graph:
        """G_i = (V, E_i) for a 0-based part index; isolated vertices kept."""
        return Graph(self.host.vertices, self.parts[index])

    def is_disjoint(self) -> bool:
        return sum(len(p) for p in self.parts) == len(frozenset().union(*self.parts))

    def is_complete(self) -> bool:
        return frozenset().union(*self.parts) == self.host.edges

    def problems(self) -> List[str]:
        out = []
        if not self.is_disjoint():
            out.append("parts are not pairwise disjoint")
        if not self.is_complete():
            out.append("parts do not cover the host edge set")
        return out

    def canonical_key(self) -> Tuple[Tuple[Edge, ...], ...]:
        """Identity up to reordering of the parts."""
        return tuple(sorted(tuple(sorted(p)) for p in self.parts))


def plane1_edges() -> FrozenSet[Edge]:
    cubes = [depleted_cube(spec) for spec in depleted_cube_specs()]
    seen: set = set()
    for cube in cubes:
        if seen & cube.vertices:
            raise ConstructionError("depleted cubes are not vertex-disjoint")
        seen |= cube.vertices
    edges = frozenset().union(*(c.edges for c in cubes))
    if len(edges) != PLANE_EDGE_COUNT:
        raise ConstructionError(f"plane 1 has {len(edges)} edges, expected {PLANE_EDGE_COUNT}")
    return edges


def printed_row4_conflicts() -> FrozenSet[Edge]:
    """Plane-1 edges whose prefix/suffix swap is also in plane 1 when row 4 is
    taken per cube type (Type 1: second suffix bit set, Type 2: clear)."""
    by_type = {CubeType.TYPE1: _ROW4_SECOND_BIT_SET, CubeType.TYPE2: _ROW4_SECOND_BIT_CLEAR}
    edges = frozenset().union(*(depleted_cube(s, by_type[s.cube_type]).edges for s in depleted_cube_specs()))
    return frozenset(e for e in edges if rho(e) in edges)


def build_biplanar_partition() -> EdgePartition:
    host = hypercube(8)
    part1 = plane1_edges()
    part2 = frozenset(rho(e) for e in part1)
    if part1 & part2 or (part1 | part2) != host.edges:
        raise ConstructionError("rho(plane 1) is not the complement of plane 1")
    return EdgePartition(host, (part1, part2))


def baseline_partition() -> EdgePartition:
    """Prefix-edge / suffix-edge split of Q8 = Q4 x Q4.

    A reconstruction: only the outcome (sixteen disjoint Q4s per plane) is
    documented for the baseline construction.
    """
    host = hypercube(8)
    prefix, suffix = set(), set()
    for e in host.edges:
        diff = next(i for i in range(8) if e[0].bits[i] != e[1].bits[i])
        (prefix if diff < 4 else suffix).add(e)
    return EdgePartition(host, (frozenset(prefix), frozenset(suffix)))


# ============================================================
#   VERIFICATION
# ============================================================

def _component_check(
    report: VerificationReport, name: str, edges: FrozenSet[Edge], expected: Sequence[FrozenSet[Edge]]
) -> None:
    components = connected_components(Graph.from_edges(edges)) if edges else []
    shapes_ok = len(components) == len(expected) and all(
        len(c.vertices) == 32 and len(c.edges) == 64 for c in components
    )
    matches = {c.edges for c in components} == set(expected)
    shapes = sorted({(len(c.vertices), len(c.edges)) for c in components})
    report.add(
        name,
        shapes_ok and matches,
        f"{len(components)} components with (vertices, edges) shapes {shapes}; "
        f"depleted-cube edge sets {'matched' if matches else 'not matched'}",
    )


def verify_construction(p: EdgePartition) -> VerificationReport:
    report = VerificationReport()
    q8 = hypercube(8)
    host_ok = p.host.width == 8 and len(p.host.vertices) == 256
    report.add("host-is-q8", host_ok, f"{len(p.host.vertices)} vertices of width {p.host.width}")

    sizes = [len(part) for part in p.parts]
    report.add("part-sizes", sizes == [PLANE_EDGE_COUNT, PLANE_EDGE_COUNT], f"sizes {sizes}")

    union = frozenset().union(*p.parts) if p.parts else frozenset()
    overlap = sum(sizes) - len(union)
    report.add("disjoint", overlap == 0, f"{overlap} edges appear in more than one plane")
    missing = q8.edges - union
    report.add(
        "complete",
        not missing and union <= q8.edges,
        f"union has {len(union)} edges; {len(missing)} Q8 edges missing; "
        f"{len(union - q8.edges)} non-Q8 edges",
    )

    cube_sets = [depleted_cube(s).edges for s in depleted_cube_specs()]
    rho_sets = [frozenset(rho(e) for e in cube) for cube in cube_sets]
    part1 = p.parts[0] if p.parts else frozenset()
    part2 = p.parts[1] if len(p.parts) > 1 else frozenset()
    _component_check(report, "plane1-depleted-cubes", part1, cube_sets)
    _component_check(report, "plane2-depleted-cube-images", part2, rho_sets)

    hamming_ok = all(
        u.width == 8 and v.width == 8 and hamming_distance(u, v) == 1 for part in p.parts for u, v in part
    )
    report.add("hamming-one", hamming_ok, "every edge joins labels at Hamming distance 1")

    if hamming_ok:
        rho1 = frozenset(rho(e) for e in part1)
        rho2 = frozenset(rho(e) for e in part2)
        report.add("rho-plane1-to-plane2", rho1 == part2, f"{len(rho1 ^ part2)} edges differ")
        report.add("rho-plane2-to-plane1", rho2 == part1, f"{len(rho2 ^ part1)} edges differ")
    else:
        report.add("rho-plane1-to-plane2", False, "skipped: non-hypercube edges present")
        report.add("rho-plane2-to-plane1", False, "skipped: non-hypercube edges present")

    if host_ok:
        g1, g2 = Graph(q8.vertices, part1), Graph(q8.vertices, part2)
        ok = verify_isomorphism(g1, g2, sigma_map(q8.vertices))
        report.add("sigma-isomorphism", ok, "sigma maps G1 onto G2" if ok else "sigma is not a witness")
    else:
        report.add("sigma-isomorphism", False, "skipped: host is not Q8")

    if p.parts == baseline_partition().parts:
        report.notes.append("partition equals the reconstructed prefix/suffix baseline (sixteen Q4s per plane)")
    logger.info("construction verification: %s", "pass" if report.overall else "fail")
    return report


def baseline_components_are_q4(p: Optional[EdgePartition] = None) -> bool:
    p = p or baseline_partition()
    q4 = hypercube(4)
    for part in p.parts:
        comps = connected_components(Graph.from_edges(part))
        if len(comps) != 16 or any(are_isomorphic(c, q4) is None for c in comps):
            return False
    return True
