# app/utils/storage.py
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from app.construction import EdgePartition
from app.geometry import Drawing
from app.graph_core import Graph
from app.utils.formats import (
    format_drawing,
    format_graph,
    format_partition,
    parse_drawing,
    parse_graph,
    parse_partition,
)

PathLike = Union[str, Path]

COMPONENT_FILE_PATTERN = "plane{plane}_comp{comp}.drawing"


def component_drawing_path(directory: PathLike, plane: int, comp: int) -> Path:
    return Path(directory) / COMPONENT_FILE_PATTERN.format(plane=plane, comp=comp)


def write_text(path: PathLike, text: str) -> Path:
    """
    Write with a fixed encoding and newline so output files are byte-identical
    across platforms.
    """
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return p


def read_text(path: PathLike) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def read_graph(path: PathLike) -> Graph:
    return parse_graph(read_text(path))


def write_graph(path: PathLike, g: Graph) -> Path:
    return write_text(path, format_graph(g))


def read_drawing(path: PathLike) -> Drawing:
    return parse_drawing(read_text(path))


def write_drawing(path: PathLike, d: Drawing) -> Path:
    return write_text(path, format_drawing(d))


def read_partition(path: PathLike, host: Optional[Graph] = None) -> EdgePartition:
    host, parts = parse_partition(read_text(path), host)
    return EdgePartition(host, tuple(frozenset(p) for p in parts))


def write_partition(path: PathLike, p: EdgePartition) -> Path:
    return write_text(path, format_partition(p.parts, p.host.width))


def save_json(path: PathLike, data: Dict[str, Any]) -> Path:
    """
    Small JSON sidecar (search progress, run summaries). Keys are sorted
    so repeated runs produce identical files.
    """
    return write_text(path, json.dumps(data, indent=2, sort_keys=True) + "\n")
