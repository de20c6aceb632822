# tests/test_formats.py
from __future__ import annotations

import json

import pytest

from app.errors import ParseError
from app.geometry import Point
from app.graph_core import VertexLabel, hypercube, make_edge
from app.models import SearchProgress
from app.utils.formats import (
    format_drawing,
    format_graph,
    format_partition,
    numbered_lines,
    parse_drawing,
    parse_graph,
    parse_partition,
    split_blocks,
)
from app.utils.progress import update_search_progress
from app.utils.storage import (
    component_drawing_path,
    read_partition,
    read_text,
    write_drawing,
    write_partition,
)
from tests.helpers import FIXTURES, GRAPHS, labels


# ---------- graph ----------

def test_parse_graph_fixture():
    g = parse_graph(read_text(GRAPHS / "k4.graph"))
    assert len(g.vertices) == 4
    assert len(g.edges) == 6


@pytest.mark.parametrize("name", ["k4.graph", "tree.graph", "triangle.graph", "q4.graph"])
def test_graph_fixtures_are_canonical(name):
    text = read_text(GRAPHS / name)
    assert format_graph(parse_graph(text)) == text


def test_isolated_vertices_and_comments():
    g = parse_graph("# a comment\ngraph width=2\n\n00 01\n11\n")
    assert VertexLabel("11") in g.vertices
    assert g.degree(VertexLabel("11")) == 0
    assert format_graph(g) == "graph width=2\n00 01\n11\n"


@pytest.mark.parametrize(
    "text, line",
    [
        ("graph width=2\n00 01\n00 0x\n", 3),
        ("graph width=2\n00 01\n01 00\n", 3),
        ("graph width=2\n00 001\n", 2),
        ("graph width=2\n00 00\n", 2),
        ("grph width=2\n", 1),
    ],
)
def test_parse_graph_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text)
    assert info.value.line_number == line
    assert str(info.value).startswith(f"line {line}:")


def test_parse_graph_empty_input():
    with pytest.raises(ParseError):
        parse_graph("# nothing here\n")


# ---------- partition ----------

def test_biplanar_partition_file_matches_the_construction(biplanar_partition):
    p = read_partition(FIXTURES / "biplanar.partition")
    assert p.parts == biplanar_partition.parts
    assert format_partition(p.parts, 8) == read_text(FIXTURES / "biplanar.partition")


def test_baseline_partition_file_matches(baseline):
    assert read_partition(FIXTURES / "baseline.partition").parts == baseline.parts


def test_partition_write_read(tmp_path, biplanar_partition):
    path = write_partition(tmp_path / "p.partition", biplanar_partition)
    assert read_partition(path).parts == biplanar_partition.parts


def _q2_partition(body: str) -> str:
    return "partition k=2 width=2\n" + body


@pytest.mark.parametrize(
    "body, line",
    [
        ("plane 1 edges=1\n00 01\nplane 2 edges=2\n00 10\n", 4),          # count mismatch
        ("plane 1 edges=1\n00 11\nplane 2 edges=0\n", 3),                 # not a Q2 edge
        ("plane 1 edges=2\n00 01\n01 00\nplane 2 edges=0\n", 4),          # duplicate inside a plane
        ("plane 2 edges=0\n", 2),                                        # planes out of order
        ("00 01\nplane 1 edges=1\n", 2),                                 # edge before any plane
        ("plane 1 edges=1\n00 01\n", 1),                                 # header declares 2 planes
    ],
)
def test_parse_partition_errors(body, line):
    with pytest.raises(ParseError) as info:
        parse_partition(_q2_partition(body))
    assert info.value.line_number == line


def test_duplicates_across_planes_are_kept_for_verification():
    host, parts = parse_partition(_q2_partition("plane 1 edges=1\n00 01\nplane 2 edges=1\n00 01\n"))
    assert host == hypercube(2)
    assert parts[0] == parts[1] == [make_edge(*labels("00", "01"))]


# ---------- drawing ----------

@pytest.mark.parametrize("rel", ["biplanar/plane1_comp1.drawing", "baseline/plane2_comp16.drawing", "graphs/q4.drawing"])
def test_drawing_fixtures_are_canonical(rel):
    text = read_text(FIXTURES / rel)
    assert format_drawing(parse_drawing(text)) == text


def test_edge_line_written_backwards_reverses_its_bends():
    text = "drawing width=1\nv 0 0 0\nv 1 4 0\ne 1 0 3 1 1 1\n"
    d = parse_drawing(text)
    e = make_edge(*labels("0", "1"))
    assert d.route[e] == (Point(1, 1), Point(3, 1))
    assert format_drawing(d) == "drawing width=1\nv 0 0 0\nv 1 4 0\ne 0 1 1 1 3 1\n"


@pytest.mark.parametrize(
    "text, line",
    [
        ("drawing width=1\nv 0 0 0\nv 0 1 1\n", 3),
        ("drawing width=1\nv 0 0 0\ne 0 1\n", 3),
        ("drawing width=1\nv 0 0 0\nv 1 1 x\n", 3),
        ("drawing width=1\nv 0 0 0\nv 1 1 1\ne 0 1 5\n", 4),
        ("drawing width=1\nq 0\n", 2),
        ("drawing width=1\nv 0 0 0\nv 1 0 0\n", 1),
    ],
)
def test_parse_drawing_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_drawing(text)
    assert info.value.line_number == line


def test_split_blocks():
    lines = numbered_lines("a 1\nx\nb 2\ny\nz\n")
    blocks = list(split_blocks(lines, ("a ", "b ")))
    assert [[n for n, _ in b] for b in blocks] == [[1, 2], [3, 4, 5]]


# ---------- storage ----------

def test_component_paths(tmp_path):
    assert component_drawing_path(tmp_path, 2, 7).name == "plane2_comp7.drawing"


def test_write_drawing_creates_directories(tmp_path, crossing_x):
    path = write_drawing(tmp_path / "a" / "b" / "x.drawing", crossing_x)
    assert read_text(path) == format_drawing(crossing_x)


def test_progress_sidecar(tmp_path):
    sidecar = tmp_path / "progress.json"
    progress = SearchProgress(restarts_done=1, restarts_total=4, best_total=9)
    update_search_progress(progress, sidecar)
    data = json.loads(sidecar.read_text())
    assert data["progress"] == 0.25
    assert data["best_total"] == 9
