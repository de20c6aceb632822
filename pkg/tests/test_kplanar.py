# tests/test_kplanar.py
from __future__ import annotations

import pytest

from app.construction import EdgePartition, sigma_map
from app.errors import DomainError, SearchError
from app.geometry import count_crossings
from app.graph_core import Graph, hypercube
from app.kplanar import (
    enumerate_symmetric_partitions,
    estimate_cr_k,
    explore,
    is_structurally_symmetric,
    kss_feasible,
    render_exploration,
)
from app.models import SearchParams
from app.utils.storage import read_graph
from tests.helpers import GRAPHS

FAST = SearchParams(restarts=1, moves_per_restart=300, grid_extent=16)


def _graph(name: str) -> Graph:
    return read_graph(GRAPHS / f"{name}.graph")


# ---------- symmetry ----------

def test_biplanar_partition_is_symmetric_with_sigma(biplanar_partition):
    report = is_structurally_symmetric(biplanar_partition, hints=[sigma_map(biplanar_partition.host.vertices)])
    assert report.is_symmetric
    assert report.witnesses == [sigma_map(biplanar_partition.host.vertices)]


def test_baseline_is_symmetric(baseline):
    assert is_structurally_symmetric(baseline, hints=[sigma_map(baseline.host.vertices)]).is_symmetric


def test_unequal_parts_are_not_symmetric():
    k4 = _graph("k4")
    edges = k4.sorted_edges()
    p = EdgePartition(k4, (frozenset(edges[:2]), frozenset(edges[2:])))
    report = is_structurally_symmetric(p)
    assert not report.is_symmetric
    assert report.failing_pair == (1, 2)


def test_triangle_and_star_are_not_symmetric():
    k4 = _graph("k4")
    triangle = frozenset(e for e in k4.edges if "11" not in (str(e[0]), str(e[1])))
    p = EdgePartition(k4, (triangle, k4.edges - triangle))
    assert not is_structurally_symmetric(p).is_symmetric


def test_single_part_is_trivially_symmetric():
    k4 = _graph("k4")
    assert is_structurally_symmetric(EdgePartition(k4, (k4.edges,))).is_symmetric


def test_kss_feasibility():
    assert not kss_feasible(_graph("triangle"), 2)
    assert kss_feasible(_graph("k4"), 2)
    assert kss_feasible(_graph("k4"), 3)
    with pytest.raises(DomainError):
        kss_feasible(_graph("k4"), 1)


# ---------- enumeration ----------

def test_triangle_has_no_symmetric_2_partition():
    assert list(enumerate_symmetric_partitions(_graph("triangle"), 2)) == []


def test_c4_has_three_symmetric_2_partitions():
    found = list(enumerate_symmetric_partitions(_graph("c4"), 2))
    assert len(found) == 3
    assert len({p.canonical_key() for p in found}) == 3


def test_k4_symmetric_2_partitions_are_path_pairs():
    found = list(enumerate_symmetric_partitions(_graph("k4"), 2))
    assert len(found) == 6
    for p in found:
        for i in range(2):
            assert p.part_graph(i).degree_sequence() == [1, 1, 2, 2]


def test_k5_has_a_pair_of_five_cycles():
    found = list(enumerate_symmetric_partitions(_graph("k5"), 2))
    assert any(all(p.part_graph(i).degree_sequence() == [2] * 5 for i in range(2)) for p in found)


def test_enumeration_limit():
    assert len(list(enumerate_symmetric_partitions(_graph("k4"), 2, limit=2))) == 2


# ---------- estimates ----------

def test_k5_is_biplanar():
    estimate = estimate_cr_k(_graph("k5"), 2, FAST)
    assert estimate.best_total == 0
    assert estimate.certificate.grand_total == 0
    assert estimate.best_partition.problems() == []


def test_k6_is_biplanar():
    assert estimate_cr_k(_graph("k6"), 2, FAST).best_total == 0


def test_k4_symmetric_only_is_zero():
    estimate = estimate_cr_k(_graph("k4"), 2, FAST, symmetric_only=True)
    assert estimate.best_total == 0
    assert estimate.symmetric_only
    assert is_structurally_symmetric(estimate.best_partition).is_symmetric


def test_symmetric_bound_is_never_better_than_the_unrestricted_one():
    k5 = _graph("k5")
    restricted = estimate_cr_k(k5, 2, FAST, symmetric_only=True)
    free = estimate_cr_k(k5, 2, FAST)
    assert restricted.best_total >= free.best_total


def test_symmetric_only_on_an_infeasible_graph():
    with pytest.raises(SearchError):
        estimate_cr_k(_graph("triangle"), 2, FAST, symmetric_only=True)


def test_k5_single_plane_needs_a_crossing():
    estimate = estimate_cr_k(_graph("k5"), 1, FAST)
    assert estimate.best_total >= 1
    drawing = estimate.certificate.planes[0].component_drawings[0]
    assert count_crossings(drawing).total == estimate.best_total


def test_k_must_be_positive():
    with pytest.raises(DomainError):
        estimate_cr_k(_graph("k4"), 0, FAST)


# ---------- exploration ----------

def test_explore_triangle_is_empty():
    rows = explore(_graph("triangle"), 2)
    assert rows == []
    assert render_exploration(rows).splitlines() == [f"{'id':>6}  {'symmetric':<9}  {'part_totals':<20}  grand_total"]


def test_explore_k4_rows():
    rows = explore(_graph("k4"), 2, params=FAST)
    assert len(rows) == 10
    assert sum(r.symmetric for r in rows) == 6
    assert all(r.grand_total == 0 for r in rows)
    assert [r.partition_id for r in rows] == sorted(r.partition_id for r in rows)


def test_explore_symmetric_only_and_limit():
    k4 = _graph("k4")
    assert len(explore(k4, 2, symmetric_only=True, params=FAST)) == 6
    assert len(explore(k4, 2, limit=3, params=FAST)) == 3


def test_render_exploration_columns():
    text = render_exploration(explore(_graph("c4"), 2, params=FAST))
    lines = text.splitlines()
    assert lines[0].split() == ["id", "symmetric", "part_totals", "grand_total"]
    assert len(lines) == 4
    assert all(line.split()[1] == "yes" for line in lines[1:])
    assert all(line.split()[2] == "0,0" for line in lines[1:])


def test_q3_explore_with_limit():
    rows = explore(hypercube(3), 2, limit=5, params=FAST)
    assert len(rows) == 5
    assert all(r.grand_total == 0 for r in rows)
