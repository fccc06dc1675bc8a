"""Minimal log-log SVG plots of sweep results (no plotting dependency)."""
from __future__ import annotations

import math
from pathlib import Path
from typing import List, Sequence, Tuple

from ..analysis import SweepResult
from .runner import write_atomic

WIDTH, HEIGHT = 640, 480
LEFT, RIGHT, TOP, BOTTOM = 70, 150, 30, 60
COLORS = ("#1f77b4", "#ff7f0e", "#d62779", "#2ca02c", "#9467bd", "#8c564b", "#17becf", "#7f7f7f", "#bcbd22")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float) -> List[float]:
    out = []
    for e in range(math.floor(math.log10(lo)) - 1, math.ceil(math.log10(hi)) + 1):
        for mant in (1, 2, 5):
            v = mant * 10.0 ** e
            if lo <= v * (1 + 1e-12) and v <= hi * (1 + 1e-12):
                out.append(v)
    return out


class _Axes:
    def __init__(self, xs: Sequence[float], ys: Sequence[float]):
        self.x0, self.x1 = math.log10(min(xs)), math.log10(max(xs))
        self.y0, self.y1 = math.log10(min(ys)), math.log10(max(ys))
        if self.x1 == self.x0:
            self.x0, self.x1 = self.x0 - 0.5, self.x1 + 0.5
        if self.y1 == self.y0:
            self.y0, self.y1 = self.y0 - 0.5, self.y1 + 0.5
        pad_x, pad_y = 0.05 * (self.x1 - self.x0), 0.08 * (self.y1 - self.y0)
        self.x0, self.x1, self.y0, self.y1 = self.x0 - pad_x, self.x1 + pad_x, self.y0 - pad_y, self.y1 + pad_y

    def px(self, x: float) -> float:
        return LEFT + (math.log10(x) - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)

    def py(self, y: float) -> float:
        return HEIGHT - BOTTOM - (math.log10(y) - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)


def _polyline(ax: _Axes, pts: Sequence[Tuple[float, float]], cls: str, extra: str) -> str:
    coords = " ".join(f"{_fmt(ax.px(x))},{_fmt(ax.py(y))}" for x, y in pts)
    return f'<polyline class="{cls}" points="{coords}" fill="none" {extra}/>'


def emit_plot(sweep: SweepResult, path) -> Path:
    """Write a log-log plot of mean error per grid series to ``path`` as SVG.

    Sweeps over ``m`` get dashed ``m^-1/2`` and ``m^-1`` guides; sweeps with
    a single ``m`` are drawn against ``delta`` with ``sqrt(1 + delta)`` and
    ``1 + delta`` guides. Guides pass through the first point of the first
    series.
    """
    if not sweep.grid:
        raise ValueError("cannot plot an empty sweep")
    by_delta = len(sweep.ms) == 1 and len(sweep.deltas) > 1
    series = []
    if by_delta:
        for dither in sorted({p[2] for p in sweep.grid}):
            pts = [(p[1], sweep.stats[p].mean) for p in sweep.grid if p[2] == dither]
            series.append((f"m={sweep.ms[0]}" + ("" if dither else ", no dither"), pts))
        x_label = "quantization resolution delta"
        guides = [("(1+delta)^1/2", lambda t: math.sqrt(1 + t)), ("1+delta", lambda t: 1 + t)]
    else:
        for delta in sweep.deltas:
            for dither in sorted({p[2] for p in sweep.grid if p[1] == delta}):
                ms, means = sweep.series(delta, dither)
                series.append((f"delta={delta:g}" + ("" if dither else ", no dither"), list(zip(ms, means))))
        x_label = "number of measurements m"
        guides = [("m^-1/2", lambda t: t ** -0.5), ("m^-1", lambda t: 1.0 / t)]
    series = [(name, [(x, y) for x, y in pts if y > 0]) for name, pts in series]
    series = [s for s in series if s[1]]
    if not series:
        raise ValueError("no positive errors to plot")

    xs = [x for _, pts in series for x, _ in pts]
    ys = [y for _, pts in series for _, y in pts]
    ax = _Axes(xs, ys)
    ax_x = (min(xs), max(xs))
    anchor_x, anchor_y = series[0][1][0]
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<title>{sweep.experiment}</title>',
        f'<defs><clipPath id="plot-area"><rect x="{LEFT}" y="{TOP}" width="{WIDTH - LEFT - RIGHT}" '
        f'height="{HEIGHT - TOP - BOTTOM}"/></clipPath></defs>',
        f'<rect class="frame" x="{LEFT}" y="{TOP}" width="{WIDTH - LEFT - RIGHT}" '
        f'height="{HEIGHT - TOP - BOTTOM}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(10 ** ax.x0, 10 ** ax.x1):
        x = _fmt(ax.px(t))
        out.append(f'<line class="tick" x1="{x}" y1="{HEIGHT - BOTTOM}" x2="{x}" y2="{HEIGHT - BOTTOM + 5}" stroke="black"/>')
        out.append(f'<text x="{x}" y="{HEIGHT - BOTTOM + 18}" text-anchor="middle">{t:g}</text>')
    for t in _ticks(10 ** ax.y0, 10 ** ax.y1):
        y = _fmt(ax.py(t))
        out.append(f'<line class="tick" x1="{LEFT - 5}" y1="{y}" x2="{LEFT}" y2="{y}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{y}" text-anchor="end" dominant-baseline="middle">{t:g}</text>')
    out.append(f'<text x="{(LEFT + WIDTH - RIGHT) / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">{x_label}</text>')
    out.append(f'<text x="18" y="{(TOP + HEIGHT - BOTTOM) / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {(TOP + HEIGHT - BOTTOM) / 2:.1f})">mean reconstruction error</text>')

    out.append('<g clip-path="url(#plot-area)">')
    for name, fn in guides:
        scale = anchor_y / fn(anchor_x)
        if by_delta:
            grid = [ax_x[0] * (ax_x[1] / ax_x[0]) ** (i / 64) for i in range(65)]
        else:
            grid = [ax_x[0], ax_x[1]]
        out.append(_polyline(ax, [(t, scale * fn(t)) for t in grid], "reference",
                             f'stroke="gray" stroke-dasharray="6,4" data-rate="{name}"'))
    for i, (name, pts) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        out.append(_polyline(ax, pts, "series", f'stroke="{color}" data-label="{name}"'))
        for x, y in pts:
            out.append(f'<circle class="marker" cx="{_fmt(ax.px(x))}" cy="{_fmt(ax.py(y))}" r="3.5" fill="{color}"/>')
    out.append('</g>')

    for i, (name, _) in enumerate(series):
        y = TOP + 15 + 18 * i
        out.append(f'<circle cx="{WIDTH - RIGHT + 15}" cy="{y}" r="3.5" fill="{COLORS[i % len(COLORS)]}"/>')
        out.append(f'<text x="{WIDTH - RIGHT + 25}" y="{y}" dominant-baseline="middle">{name}</text>')
    y = TOP + 15 + 18 * len(series)
    out.append(f'<line x1="{WIDTH - RIGHT + 8}" y1="{y}" x2="{WIDTH - RIGHT + 22}" y2="{y}" '
               f'stroke="gray" stroke-dasharray="6,4"/>')
    out.append(f'<text x="{WIDTH - RIGHT + 25}" y="{y}" dominant-baseline="middle">'
               f'{" and ".join(g[0] for g in guides)}</text>')
    out.append("</svg>")
    path = Path(path)
    write_atomic(path, "\n".join(out) + "\n")
    return path
