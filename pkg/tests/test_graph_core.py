# tests/test_graph_core.py
from __future__ import annotations

import pytest

from app.errors import DomainError
from app.graph_core import (
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
    xor_map,
)
from tests.helpers import complete_graph, labels


# ---------- labels ----------

def test_label_roundtrip_through_int():
    v = VertexLabel.from_int(5, 4)
    assert v.bits == "0101"
    assert v.to_int() == 5
    assert v.width == 4


@pytest.mark.parametrize("bits", ["", "0120", "ab"])
def test_label_rejects_non_binary(bits):
    with pytest.raises(DomainError):
        VertexLabel(bits)


def test_label_from_int_out_of_range():
    with pytest.raises(DomainError):
        VertexLabel.from_int(16, 4)


def test_label_ops():
    v = VertexLabel("0011")
    assert v.complement() == VertexLabel("1100")
    assert v.xor(VertexLabel("0101")) == VertexLabel("0110")
    assert v.concat(VertexLabel("10")) == VertexLabel("001110")


def test_labels_of_different_width_do_not_compare():
    with pytest.raises(DomainError):
        _ = VertexLabel("01") < VertexLabel("011")


def test_make_edge_is_canonical():
    a, b = labels("10", "01")
    assert make_edge(a, b) == (b, a)
    assert format_edge(make_edge(a, b)) == "01-10"
    with pytest.raises(DomainError):
        make_edge(a, a)


# ---------- graphs ----------

@pytest.mark.parametrize("d", [1, 2, 3, 4, 8])
def test_hypercube_sizes(d):
    q = hypercube(d)
    assert len(q.vertices) == 2 ** d
    assert len(q.edges) == d * 2 ** (d - 1)
    assert set(q.degree_sequence()) == {d}
    assert all(hamming_distance(u, v) == 1 for u, v in q.edges)


@pytest.mark.parametrize("d", [0, 17])
def test_hypercube_dimension_bounds(d):
    with pytest.raises(DomainError):
        hypercube(d)


def test_graph_rejects_mixed_widths():
    with pytest.raises(DomainError):
        Graph(frozenset(labels("0", "01")), frozenset())


def test_graph_rejects_non_canonical_edge():
    a, b = labels("00", "01")
    with pytest.raises(DomainError):
        Graph(frozenset([a, b]), frozenset([(b, a)]))


def test_hamming_distance_needs_equal_width():
    with pytest.raises(DomainError):
        hamming_distance(VertexLabel("0"), VertexLabel("00"))


def test_connected_components_sorted_by_smallest_label():
    a, b, c, d, e = labels("100", "101", "000", "001", "111")
    g = Graph.from_edges([(a, b), (c, d)], [e])
    comps = connected_components(g)
    assert [min(x.vertices) for x in comps] == [c, a, e]
    assert [len(x.edges) for x in comps] == [1, 1, 0]


def test_induced_subgraph_and_without_edge():
    q = hypercube(3)
    sub = q.induced_subgraph(labels("000", "001", "011", "010"))
    assert len(sub.edges) == 4
    e = min(sub.edges)
    assert e not in sub.without_edge(e).edges


# ---------- vertex maps ----------

def test_vertex_map_must_be_injective():
    a, b = labels("0", "1")
    with pytest.raises(DomainError):
        VertexMap({a: a, b: a})


def test_vertex_map_compose_and_invert():
    q = hypercube(3)
    m = xor_map(q.vertices, VertexLabel("011"))
    assert m.is_permutation()
    assert m.then(m.inverse()) == VertexMap.identity(q.vertices)
    assert verify_isomorphism(q, apply_vertex_map(q, m), m)


def test_complement_is_a_hypercube_automorphism():
    q = hypercube(4)
    m = complement_map(q.vertices)
    assert apply_vertex_map(q, m) == q


def test_apply_vertex_map_requires_total_map():
    q = hypercube(2)
    with pytest.raises(DomainError):
        apply_vertex_map(q, VertexMap({VertexLabel("00"): VertexLabel("00")}))


def test_verify_isomorphism_detects_a_bad_witness():
    q = hypercube(2)
    a, b, c, d = labels("00", "01", "10", "11")
    # swapping 01 and 11 sends 00-01 to the non-edge 00-11
    bad = VertexMap({a: a, b: d, c: c, d: b})
    assert not verify_isomorphism(q, q, bad)


# ---------- isomorphism search ----------

def test_are_isomorphic_on_relabelled_cube():
    q = hypercube(4)
    perm = VertexMap.from_function(q.vertices, lambda v: VertexLabel(v.bits[::-1]))
    h = apply_vertex_map(q, perm)
    witness = are_isomorphic(q, h)
    assert witness is not None
    assert verify_isomorphism(q, h, witness)


def test_are_isomorphic_rejects_same_degree_sequence():
    # C6 against two triangles: both 2-regular on six vertices
    vs = [VertexLabel.from_int(i, 3) for i in range(6)]
    c6 = Graph.from_edges([(vs[i], vs[(i + 1) % 6]) for i in range(6)])
    triangles = Graph.from_edges(
        [(vs[0], vs[1]), (vs[1], vs[2]), (vs[0], vs[2]), (vs[3], vs[4]), (vs[4], vs[5]), (vs[3], vs[5])]
    )
    assert are_isomorphic(c6, triangles) is None


def test_are_isomorphic_complete_graphs():
    assert are_isomorphic(complete_graph(5, 3), complete_graph(5, 3)) is not None
    assert are_isomorphic(complete_graph(5, 3), complete_graph(4, 3)) is None


def test_are_isomorphic_empty_graphs():
    empty = Graph(frozenset(), frozenset())
    assert are_isomorphic(empty, empty) == VertexMap({})
