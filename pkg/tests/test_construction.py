# tests/test_construction.py
from __future__ import annotations

import pytest

from app.construction import (
    PLANE_EDGE_COUNT,
    DepletedCubeSpec,
    EdgePartition,
    baseline_components_are_q4,
    c1_c2_sets,
    check_complement_symmetry,
    complement_partner,
    depleted_cube,
    depleted_cube_specs,
    pair_sets,
    plane1_edges,
    printed_row4_conflicts,
    rho,
    sigma,
    verify_construction,
)
from app.errors import DomainError
from app.graph_core import (
    Graph,
    VertexLabel,
    are_isomorphic,
    connected_components,
    hypercube,
    make_edge,
)
from app.models import CubeType
from tests.helpers import labels


def _checks(report):
    return {c.name: c.passed for c in report.checks}


# ---------- vertex classes and pairs ----------

def test_c1_c2_split_the_4_cube():
    c1, c2 = c1_c2_sets()
    assert len(c1) == len(c2) == 8
    assert c1 | c2 == hypercube(4).vertices
    assert {v.complement() for v in c1} == c2


def test_pairs_differ_in_the_first_bit():
    p1, p2 = pair_sets()
    assert len(p1) == len(p2) == 4
    for a, b in list(p1) + list(p2):
        assert a.bits[1:] == b.bits[1:]
        assert a.bits[0] != b.bits[0]


def test_spec_rejects_pair_of_the_wrong_type():
    with pytest.raises(DomainError):
        DepletedCubeSpec(CubeType.TYPE1, tuple(labels("0111", "1111")))


def test_complement_partner():
    spec = DepletedCubeSpec(CubeType.TYPE1, tuple(labels("0000", "1000")))
    partner = complement_partner(spec)
    assert partner.cube_type == CubeType.TYPE2
    assert set(partner.pair) == set(labels("1111", "0111"))
    assert complement_partner(partner) == spec


# ---------- depleted cubes ----------

@pytest.mark.parametrize("spec", depleted_cube_specs(), ids=lambda s: f"{s.cube_type.value}-{s.pair[0]}")
def test_depleted_cube_shape(spec):
    cube = depleted_cube(spec)
    assert len(cube.vertices) == 32
    assert len(cube.edges) == 64
    assert len(connected_components(cube)) == 1
    prefixes = {v.bits[:4] for v in cube.vertices}
    assert prefixes == {spec.pair[0].bits, spec.pair[1].bits}
    assert max(cube.degree_sequence()) <= 5


def test_cubes_on_both_row4_patterns_are_isomorphic():
    specs = depleted_cube_specs()
    low = depleted_cube(specs[0])     # 0000/1000, third prefix bit clear
    high = depleted_cube(specs[1])    # 0010/1010, third prefix bit set
    assert are_isomorphic(low, high) is not None


def test_complement_symmetry():
    assert check_complement_symmetry()


def test_printed_row4_tables_collide_with_their_own_swap():
    conflicts = printed_row4_conflicts()
    assert len(conflicts) == 64
    assert all(rho(e) in conflicts for e in conflicts)


def test_plane1_has_no_rho_collisions():
    edges = plane1_edges()
    assert len(edges) == PLANE_EDGE_COUNT
    assert not {rho(e) for e in edges} & edges


# ---------- sigma and rho ----------

def test_sigma_swaps_halves():
    assert sigma(VertexLabel("00010111")) == VertexLabel("01110001")
    with pytest.raises(DomainError):
        sigma(VertexLabel("0001"))


def test_rho_is_an_involution_on_q8():
    q8 = hypercube(8)
    assert all(rho(rho(e)) == e for e in q8.edges)


def test_rho_rejects_non_edges():
    with pytest.raises(DomainError):
        rho(tuple(labels("00000000", "00000011")))


# ---------- partitions ----------

def test_biplanar_partition_sizes(biplanar_partition):
    assert [len(p) for p in biplanar_partition.parts] == [512, 512]
    assert biplanar_partition.is_disjoint()
    assert biplanar_partition.is_complete()
    assert biplanar_partition.problems() == []


def test_biplanar_partition_verifies(biplanar_partition):
    report = verify_construction(biplanar_partition)
    assert report.overall, report.render()
    assert "overall: PASS" in report.render()


def test_plane_components_are_the_depleted_cubes(biplanar_partition):
    comps = connected_components(Graph.from_edges(biplanar_partition.parts[0]))
    assert len(comps) == 8
    assert {c.edges for c in comps} == {depleted_cube(s).edges for s in depleted_cube_specs()}


def test_baseline_fails_only_the_component_checks(baseline):
    checks = _checks(verify_construction(baseline))
    assert not checks["plane1-depleted-cubes"]
    for name in ("host-is-q8", "part-sizes", "disjoint", "complete", "hamming-one",
                 "rho-plane1-to-plane2", "sigma-isomorphism"):
        assert checks[name], name


def test_baseline_components_are_q4(baseline):
    assert baseline_components_are_q4(baseline)


def test_moving_one_edge_breaks_disjointness(biplanar_partition):
    e = min(biplanar_partition.parts[0])
    f = min(biplanar_partition.parts[1])
    corrupted = EdgePartition(
        biplanar_partition.host,
        (biplanar_partition.parts[0], (biplanar_partition.parts[1] - {f}) | {e}),
    )
    checks = _checks(verify_construction(corrupted))
    assert not checks["disjoint"]
    assert not checks["complete"]
    assert not checks["sigma-isomorphism"]


def test_edge_partition_rejects_non_host_edges():
    q2 = hypercube(2)
    with pytest.raises(DomainError):
        EdgePartition(q2, (frozenset({make_edge(*labels("00", "11"))}),))


def test_canonical_key_ignores_part_order(biplanar_partition):
    swapped = EdgePartition(biplanar_partition.host, biplanar_partition.parts[::-1])
    assert swapped.canonical_key() == biplanar_partition.canonical_key()
