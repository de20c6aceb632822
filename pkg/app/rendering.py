# app/rendering.py
from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Tuple, Union
from xml.sax.saxutils import escape

from PIL import Image, ImageDraw

from app.geometry import Drawing

logger = logging.getLogger(__name__)

SVG_MARGIN_FRACTION = 0.05
PNG_DEFAULT_SIZE = 1024
PNG_MIN_SIZE = 64

_SVG_HEADER = """<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
"""


def _num(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".") or "0"


# ============================================================
#   SVG
# ============================================================

def export_svg(d: Drawing) -> str:
    """SVG 1.1 text. The y axis is flipped so the picture reads like the grid."""
    x0, y0, x1, y1 = d.bounding_box()
    span = max(x1 - x0, y1 - y0, 1)
    margin = span * SVG_MARGIN_FRACTION
    radius = span * 0.008 + 0.25
    font = span * 0.012 + 0.5
    # flipped y: grid y maps to -y
    vx, vy = x0 - margin, -y1 - margin
    vw, vh = (x1 - x0) + 2 * margin, (y1 - y0) + 2 * margin

    out = [
        _SVG_HEADER,
        f'<svg version="1.1" xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_num(vx)} {_num(vy)} {_num(vw)} {_num(vh)}">\n',
        f'  <g fill="none" stroke="rgb(99,99,99)" stroke-width="{_num(radius / 3)}">\n',
    ]
    for e in d.graph.sorted_edges():
        pts = " ".join(f"{p.x},{-p.y}" for p in d.polyline(e))
        out.append(f'    <polyline data-edge="{e[0]}-{e[1]}" points="{pts}"/>\n')
    out.append("  </g>\n")
    out.append(f'  <g fill="red" stroke="black" stroke-width="{_num(radius / 5)}">\n')
    for v in d.graph.sorted_vertices():
        p = d.position[v]
        out.append(f'    <circle cx="{p.x}" cy="{-p.y}" r="{_num(radius)}"/>\n')
    out.append("  </g>\n")
    out.append(f'  <g font-family="Verdana" font-size="{_num(font)}">\n')
    for v in d.graph.sorted_vertices():
        p = d.position[v]
        out.append(
            f'    <text x="{_num(p.x + radius)}" y="{_num(-p.y - radius)}">{escape(str(v))}</text>\n'
        )
    out.append("  </g>\n</svg>\n")
    return "".join(out)


# ============================================================
#   PNG
# ============================================================

def render_png(
    d: Drawing,
    out_path: Union[str, Path],
    size: int = PNG_DEFAULT_SIZE,
    labels: bool = True,
) -> Path:
    if size < PNG_MIN_SIZE:
        raise ValueError(f"PNG size must be at least {PNG_MIN_SIZE}, got {size}")
    x0, y0, x1, y1 = d.bounding_box()
    span = max(x1 - x0, y1 - y0, 1)
    pad = size * SVG_MARGIN_FRACTION
    scale = (size - 2 * pad) / span

    def to_px(x: int, y: int) -> Tuple[float, float]:
        return (pad + (x - x0) * scale, size - pad - (y - y0) * scale)

    img = Image.new("RGB", (size, size), (255, 255, 255))
    draw = ImageDraw.Draw(img)
    for e in d.graph.sorted_edges():
        pts: List[Tuple[float, float]] = [to_px(p.x, p.y) for p in d.polyline(e)]
        draw.line(pts, fill=(99, 99, 99), width=1)
    r = max(2.0, size / 256)
    for v in d.graph.sorted_vertices():
        cx, cy = to_px(*d.position[v])
        draw.ellipse([(cx - r, cy - r), (cx + r, cy + r)], fill=(255, 0, 0), outline=(0, 0, 0))
        if labels:
            draw.text((cx + r, cy - 3 * r), str(v), fill=(0, 0, 0))

    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    img.save(out, format="PNG")
    logger.info("wrote %dx%d PNG to %s", size, size, out)
    return out
