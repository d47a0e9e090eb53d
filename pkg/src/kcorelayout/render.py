"""Standalone SVG output for a :class:`~kcorelayout.layout.Layout`."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .layout import Layout, color_of, size_of

LEGEND_HEIGHT = 60
MARGIN = 0.05


@dataclass(frozen=True)
class RenderOptions:
    canvas: int = 800
    background: str = "#ffffff"
    edge_opacity: float = 0.4
    edge_width: float = 0.6
    legend: bool = True

    def __post_init__(self):
        if self.canvas <= 0:
            raise ValueError(f"canvas size must be positive, got {self.canvas}")
        if not 0.0 <= self.edge_opacity <= 1.0:
            raise ValueError("edge_opacity must lie in [0, 1]")


def _fit_viewport(positions: np.ndarray, size: int):
    """Map layout coordinates onto a ``size`` square, y pointing up."""
    if len(positions) == 0:
        return lambda p: p
    lo = positions.min(axis=0)
    hi = positions.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1]))
    if span <= 0.0:
        span = 1.0
    span *= 1.0 + 2.0 * MARGIN
    mid = (lo + hi) / 2.0
    scale = size / span

    def to_px(p):
        p = np.asarray(p, dtype=float)
        x = size / 2.0 + (p[..., 0] - mid[0]) * scale
        y = size / 2.0 - (p[..., 1] - mid[1]) * scale
        return np.stack([x, y], axis=-1)

    return to_px


def render_legend(c_min: int, c_max: int, d_min: int, d_max: int, *, top: float = 0.0,
                  width: float = 800.0, size_min: float = 1.0, size_max: float = 6.0) -> str:
    """Coreness color bar plus a two-glyph degree size ramp.

    Size glyphs are ellipses so that ``<circle>`` stays reserved for vertices.
    """
    parts = ['<g id="legend" font-family="sans-serif" font-size="11">']
    n_swatch = c_max - c_min + 1
    bar_width = width * 0.55
    sw = bar_width / n_swatch
    x0, y0 = 10.0, top + 18.0
    parts.append(f'<text x="{x0:.2f}" y="{y0 - 6:.2f}">coreness</text>')
    for k, c in enumerate(range(c_min, c_max + 1)):
        parts.append(f'<rect class="swatch" x="{x0 + k * sw:.2f}" y="{y0:.2f}" '
                     f'width="{sw:.2f}" height="14.00" fill="{color_of(c, c_min, c_max)}"/>')
    parts.append(f'<text x="{x0:.2f}" y="{y0 + 28:.2f}">{c_min}</text>')
    parts.append(f'<text x="{x0 + bar_width:.2f}" y="{y0 + 28:.2f}" '
                 f'text-anchor="end">{c_max}</text>')

    sx = x0 + bar_width + 30.0
    cy = y0 + 7.0
    parts.append(f'<text x="{sx:.2f}" y="{y0 - 6:.2f}">degree</text>')
    for label, dx in ((d_min, 0.0), (d_max, 60.0)):
        r = size_of(label, d_max, size_min, size_max)
        parts.append(f'<ellipse cx="{sx + dx + size_max:.2f}" cy="{cy:.2f}" rx="{r:.2f}" '
                     f'ry="{r:.2f}" fill="#555555"/>')
        parts.append(f'<text x="{sx + dx + 2 * size_max + 4:.2f}" y="{cy + 4:.2f}">'
                     f'{escape(str(label))}</text>')
    parts.append("</g>")
    return "\n".join(parts)


def render_svg(layout: Layout, opts: RenderOptions | None = None) -> str:
    """SVG 1.1 document for ``layout``.

    Sampled edges go first, each as two half segments colored by their own
    endpoint. Vertices follow in ascending coreness so the core is painted
    last and stays on top.
    """
    opts = opts or RenderOptions()
    size = opts.canvas
    height = size + (LEGEND_HEIGHT if opts.legend else 0)
    to_px = _fit_viewport(layout.positions, size)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" '
        f'height="{height}" viewBox="0 0 {size} {height}">',
        f'<rect width="{size}" height="{height}" fill="{opts.background}"/>',
    ]
    if layout.n:
        px = to_px(layout.positions).tolist()
        out.append(f'<g id="edges" stroke-width="{opts.edge_width:.2f}" '
                   f'stroke-opacity="{opts.edge_opacity:.2f}" stroke-linecap="round">')
        for u, v in layout.edges.tolist():
            (x1, y1), (x2, y2) = px[u], px[v]
            mx, my = (x1 + x2) / 2.0, (y1 + y2) / 2.0
            out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{mx:.2f}" y2="{my:.2f}" '
                       f'stroke="{layout.colors[u]}"/>')
            out.append(f'<line x1="{x2:.2f}" y1="{y2:.2f}" x2="{mx:.2f}" y2="{my:.2f}" '
                       f'stroke="{layout.colors[v]}"/>')
        out.append("</g>")
        out.append('<g id="vertices">')
        for i in np.lexsort((np.arange(layout.n), layout.coreness)).tolist():
            x, y = px[i]
            out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{layout.sizes[i]:.2f}" '
                       f'fill="{layout.colors[i]}" class="c{layout.coreness[i]}"/>')
        out.append("</g>")
    if opts.legend:
        if layout.n:
            c_lo, c_hi = int(layout.coreness.min()), layout.c_max
            d_lo, d_hi = int(layout.degree.min()), int(layout.degree.max())
        else:
            c_lo = c_hi = d_lo = d_hi = 0
        cfg = layout.config
        out.append(render_legend(c_lo, c_hi, d_lo, d_hi, top=float(size), width=float(size),
                                 size_min=cfg.size_min, size_max=cfg.size_max))
    out.append("</svg>")
    return "\n".join(out) + "\n"
