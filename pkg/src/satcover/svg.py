"""Minimal SVG rendering: raster pixels, junction highlights, traced paths,
and cover diagrams (path with maximal-segment overlays plus the arc circle)."""

from __future__ import annotations

import math

from .cover import SaturatedCover
from .paths import DigitalPath
from .pbm import BinaryImage

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
            "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")

_CELL = 24


def _header(w: float, h: float) -> list[str]:
    return [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:g}" height="{h:g}" '
            f'viewBox="0 0 {w:g} {h:g}">',
            f'<rect width="{w:g}" height="{h:g}" fill="white"/>']


def render_trace_svg(img: BinaryImage, junction_pixels: set, paths: list[DigitalPath]) -> str:
    w, h = img.width * _CELL, img.height * _CELL
    out = _header(w + 2 * _CELL, h + 2 * _CELL)
    out.append(f'<g transform="translate({_CELL},{_CELL})">')
    for (x, y) in sorted(img.foreground):
        fill = "#f4a261" if (x, y) in junction_pixels else "#d9d9d9"
        out.append(f'<rect x="{x * _CELL}" y="{y * _CELL}" width="{_CELL}" height="{_CELL}" '
                   f'fill="{fill}" stroke="#999"/>')
    for i, path in enumerate(paths):
        color = _PALETTE[i % len(_PALETTE)]
        pts = list(path.points) + ([path.points[0]] if path.closed else [])
        coords = " ".join(f"{x * _CELL + _CELL / 2:g},{y * _CELL + _CELL / 2:g}" for x, y in pts)
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                   f'stroke-width="2.5" stroke-linejoin="round" opacity="0.85"/>')
        sx, sy = path.points[0]
        out.append(f'<circle cx="{sx * _CELL + _CELL / 2:g}" cy="{sy * _CELL + _CELL / 2:g}" '
                   f'r="4" fill="{color}"/>')
    out.append("</g></svg>")
    return "\n".join(out) + "\n"


def render_cover_svg(path: DigitalPath, cover: SaturatedCover) -> str:
    xs = [p[0] for p in path.points]
    ys = [p[1] for p in path.points]
    w = (max(xs) - min(xs) + 1) * _CELL
    h = (max(ys) - min(ys) + 1) * _CELL
    diagram = max(h, 280)
    total_w = w + diagram + 3 * _CELL
    out = _header(total_w + _CELL, max(h, diagram) + 2 * _CELL)
    ox, oy = _CELL - min(xs) * _CELL, _CELL - min(ys) * _CELL

    def cxy(p):
        return (p[0] * _CELL + ox + _CELL / 2, p[1] * _CELL + oy + _CELL / 2)

    pts = list(path.points) + ([path.points[0]] if path.closed else [])
    coords = " ".join(f"{x:g},{y:g}" for x, y in map(cxy, pts))
    out.append(f'<polyline points="{coords}" fill="none" stroke="#444" stroke-width="1.5"/>')
    n1 = path.n_points
    for i, seg in enumerate(cover.segments):
        color = _PALETTE[i % len(_PALETTE)]
        seg_pts = [path.points[k] for k in seg.indices(n1)]
        coords = " ".join(f"{x:g},{y:g}" for x, y in map(cxy, seg_pts))
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                   f'stroke-width="3" opacity="0.6"/>')

    # arc diagram: each segment as an arc of a circle, radially offset
    cx = w + 2 * _CELL + diagram / 2
    cy = max(h, diagram) / 2 + _CELL
    base_r = diagram / 2 - 20
    out.append(f'<circle cx="{cx:g}" cy="{cy:g}" r="{base_r:g}" fill="none" stroke="#ccc"/>')
    for i, seg in enumerate(cover.segments):
        color = _PALETTE[i % len(_PALETTE)]
        r = base_r - 6 - 6 * (i % 8)
        a0 = 2 * math.pi * seg.start / n1
        a1 = 2 * math.pi * (seg.start + seg.length - 1) / n1
        large = 1 if (a1 - a0) % (2 * math.pi) > math.pi else 0
        x0, y0 = cx + r * math.cos(a0), cy - r * math.sin(a0)
        x1, y1 = cx + r * math.cos(a1), cy - r * math.sin(a1)
        out.append(f'<path d="M {x0:g} {y0:g} A {r:g} {r:g} 0 {large} 0 {x1:g} {y1:g}" '
                   f'fill="none" stroke="{color}" stroke-width="3"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
