# tests/test_rendering.py
from __future__ import annotations

import pytest
from PIL import Image

from app.rendering import PNG_MIN_SIZE, export_svg, render_png


def test_svg_has_one_circle_per_vertex(biplanar_drawings):
    d = biplanar_drawings[0][0]
    svg = export_svg(d)
    assert svg.startswith("<?xml")
    assert svg.count("<circle") == 32
    assert svg.count("<polyline") == 64
    assert svg.rstrip().endswith("</svg>")


def test_svg_is_deterministic(crossing_x):
    assert export_svg(crossing_x) == export_svg(crossing_x)


def test_svg_flips_y(crossing_x):
    # vertex 01 sits at (0, 2)
    assert '<circle cx="0" cy="-2"' in export_svg(crossing_x)


def test_png_render(tmp_path, crossing_x):
    path = render_png(crossing_x, tmp_path / "x.png", size=128)
    with Image.open(path) as img:
        assert img.size == (128, 128)
        assert img.format == "PNG"


def test_png_rejects_tiny_canvas(tmp_path, crossing_x):
    with pytest.raises(ValueError):
        render_png(crossing_x, tmp_path / "x.png", size=PNG_MIN_SIZE - 1)
