# tests/conftest.py
from __future__ import annotations

from pathlib import Path
from typing import List

import pytest

from app.construction import EdgePartition, baseline_partition, build_biplanar_partition
from app.geometry import Drawing
from app.graph_core import Graph
from app.utils.storage import read_graph
from tests.helpers import FIXTURES, GRAPHS, load_components, straight


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def biplanar_partition() -> EdgePartition:
    return build_biplanar_partition()


@pytest.fixture(scope="session")
def baseline() -> EdgePartition:
    return baseline_partition()


@pytest.fixture(scope="session")
def biplanar_drawings() -> List[List[Drawing]]:
    return [load_components(FIXTURES / "biplanar", i, 8) for i in (1, 2)]


@pytest.fixture(scope="session")
def baseline_drawings() -> List[List[Drawing]]:
    return [load_components(FIXTURES / "baseline", i, 16) for i in (1, 2)]


@pytest.fixture
def crossing_x() -> Drawing:
    """Two edges crossing once in an X."""
    return straight([("00", "11"), ("01", "10")], {"00": (0, 0), "11": (2, 2), "01": (0, 2), "10": (2, 0)})


@pytest.fixture
def k5() -> Graph:
    return read_graph(GRAPHS / "k5.graph")
