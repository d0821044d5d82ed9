"""SVG raster of the Ellsberg region at fixed d.

Each grid cell inside the region is painted as a filled rectangle; runs of
adjacent cells along x are merged into one rectangle to keep files small.
x runs left to right, y bottom to top, both over [0, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .ellsberg import _check_phase, ellsberg_mask
from .errors import DomainError
from .quadrature import midpoints

MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 56, 16, 28, 44


@dataclass(frozen=True)
class PlotSpec:
    d: float
    width: int = 800
    height: int = 800
    color: str = "#4477AA"
    x_label: str = "x"
    y_label: str = "y"

    def __post_init__(self):
        _check_phase(self.d)
        if self.width < 64 or self.height < 64:
            raise DomainError(f"plot must be at least 64x64 pixels, got {self.width}x{self.height}")

    @property
    def plot_box(self) -> tuple[float, float, float, float]:
        """(left, top, width, height) of the data area in pixels."""
        w = max(self.width - MARGIN_LEFT - MARGIN_RIGHT, 1)
        h = max(self.height - MARGIN_TOP - MARGIN_BOTTOM, 1)
        return MARGIN_LEFT, MARGIN_TOP, w, h


def region_mask(d: float, n: int, u0: float = 0.0, u100: float = 1.0) -> np.ndarray:
    """Boolean (n_y, n_x) mask of cell centres inside the region; row 0 is y smallest."""
    xs = midpoints(n)
    ys = midpoints(n)
    return ellsberg_mask(xs[None, :], ys[:, None], d, u0, u100)


def _runs(row: np.ndarray):
    padded = np.concatenate(([False], row, [False])).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return zip(edges[::2], edges[1::2])


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".")


def render_region_svg(spec: PlotSpec, n: int, u0: float = 0.0, u100: float = 1.0) -> str:
    mask = region_mask(spec.d, n, u0, u100)
    left, top, pw, ph = spec.plot_box
    cw, ch = pw / n, ph / n
    bottom = top + ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}">',
        f'<title>Ellsberg region, d = {spec.d:.6g} rad, {n}x{n} grid</title>',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        f'<g id="region" fill="{escape(spec.color)}" shape-rendering="crispEdges">',
    ]
    for j in range(n):
        y_px = bottom - (j + 1) * ch
        for i0, i1 in _runs(mask[j]):
            out.append(
                f'<rect x="{_fmt(left + i0 * cw)}" y="{_fmt(y_px)}" width="{_fmt((i1 - i0) * cw)}" height="{_fmt(ch)}"/>'
            )
    out.append("</g>")

    out.append(f'<g id="axes" stroke="black" fill="none"><rect x="{left}" y="{top}" width="{_fmt(pw)}" height="{_fmt(ph)}"/></g>')
    out.append('<g id="ticks" font-family="sans-serif" font-size="12" fill="black">')
    for t in (0.0, 0.25, 0.5, 0.75, 1.0):
        tx = left + t * pw
        ty = bottom - t * ph
        out.append(f'<line x1="{_fmt(tx)}" y1="{_fmt(bottom)}" x2="{_fmt(tx)}" y2="{_fmt(bottom + 5)}" stroke="black"/>')
        out.append(f'<text x="{_fmt(tx)}" y="{_fmt(bottom + 18)}" text-anchor="middle">{t:g}</text>')
        out.append(f'<line x1="{left - 5}" y1="{_fmt(ty)}" x2="{left}" y2="{_fmt(ty)}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{_fmt(ty + 4)}" text-anchor="end">{t:g}</text>')
    out.append("</g>")
    out.append(
        f'<text id="x-label" x="{_fmt(left + pw / 2)}" y="{spec.height - 8}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle">{escape(spec.x_label)}</text>'
    )
    out.append(
        f'<text id="y-label" x="14" y="{_fmt(top + ph / 2)}" font-family="sans-serif" font-size="14" '
        f'text-anchor="middle">{escape(spec.y_label)}</text>'
    )
    out.append(
        f'<text id="caption" x="{_fmt(left + pw / 2)}" y="18" font-family="sans-serif" font-size="13" '
        f'text-anchor="middle">d = {spec.d / math.pi:.4g} pi, region share {mask.mean():.4f}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
