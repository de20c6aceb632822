# tests/helpers.py
from __future__ import annotations

from itertools import combinations
from pathlib import Path
from typing import Dict, List, Tuple

from app.geometry import Drawing, Point
from app.graph_core import Graph, VertexLabel
from app.utils.storage import component_drawing_path, read_drawing

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GRAPHS = FIXTURES / "graphs"


def labels(*bits: str) -> List[VertexLabel]:
    return [VertexLabel(b) for b in bits]


def complete_graph(n: int, width: int) -> Graph:
    vs = [VertexLabel.from_int(i, width) for i in range(n)]
    return Graph.from_edges(combinations(vs, 2), vs)


def straight(edges: List[Tuple[str, str]], coords: Dict[str, Tuple[int, int]]) -> Drawing:
    """Straight-line drawing from bit-string edges and coordinates."""
    g = Graph.from_edges(((VertexLabel(u), VertexLabel(v)) for u, v in edges), labels(*coords))
    return Drawing.straight(g, {VertexLabel(k): Point(*p) for k, p in coords.items()})


def load_components(directory: Path, plane: int, count: int) -> List[Drawing]:
    return [read_drawing(component_drawing_path(directory, plane, j)) for j in range(1, count + 1)]
