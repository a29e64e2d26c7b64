"""Deterministic SVG 1.1 drawings of decompositions and certificates.

Coordinates are converted to floats only here, and always printed with a
fixed number of decimals, so identical input gives identical bytes.
"""
from __future__ import annotations

from typing import List, Sequence, Tuple

from .equidecomp import Certificate, affine_pieces
from .exact_geom import SimplePolygon

PANEL = 320
MARGIN = 16


def piece_color(k: int) -> str:
    # golden-angle hue steps keep neighbouring indices apart
    return f"hsl({(k * 137.508) % 360:.1f},65%,62%)"


def _bbox(polys: Sequence[SimplePolygon]):
    xs = [float(v.x) for p in polys for v in p.vertices]
    ys = [float(v.y) for p in polys for v in p.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def _panel(polys: Sequence[SimplePolygon], colors: Sequence[str], x0: float,
           scale: float, box) -> List[str]:
    bx0, by0, _, by1 = box
    out = []
    for poly, color in zip(polys, colors):
        pts = " ".join(
            f"{x0 + MARGIN + (float(v.x) - bx0) * scale:.3f},"
            f"{MARGIN + (by1 - float(v.y)) * scale:.3f}"
            for v in poly.vertices
        )
        out.append(f'  <polygon points="{pts}" fill="{color}" stroke="#222" '
                   f'stroke-width="0.5" stroke-linejoin="round"/>')
    return out


def _document(panels: List[Tuple[Sequence[SimplePolygon], Sequence[str]]]) -> str:
    boxes = [_bbox(polys) for polys, _ in panels if polys]
    if not boxes:
        width, height = PANEL + 2 * MARGIN, PANEL + 2 * MARGIN
        body: List[str] = []
    else:
        span = max(max(b[2] - b[0], b[3] - b[1]) for b in boxes) or 1.0
        scale = PANEL / span
        height = max((b[3] - b[1]) * scale for b in boxes) + 2 * MARGIN
        width = len(panels) * (PANEL + 2 * MARGIN)
        body = []
        for k, (polys, colors) in enumerate(panels):
            if polys:
                box = _bbox(polys)
                box = (box[0], box[1], box[2], box[1] + (height - 2 * MARGIN) / scale)
                body.append(f'  <g id="panel{k}">')
                body.extend(_panel(polys, colors, k * (PANEL + 2 * MARGIN), scale, box))
                body.append("  </g>")
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width:.0f}" height="{height:.0f}" '
            f'viewBox="0 0 {width:.0f} {height:.0f}">')
    return "\n".join([head, *body, "</svg>"]) + "\n"


def render_decomposition(pieces: Sequence[SimplePolygon]) -> str:
    """One panel, one filled ``<polygon>`` per piece."""
    pieces = list(pieces)
    return _document([(pieces, [piece_color(k) for k in range(len(pieces))])])


def render_certificate(c: Certificate) -> str:
    """Source cells on the left, their images on the right, matching colors."""
    flat = list(affine_pieces(c))
    colors = [piece_color(k) for k in range(len(flat))]
    sources = [cell for cell, _ in flat]
    images = [m.image(cell) for cell, m in flat]
    return _document([(sources, colors), (images, colors)])
