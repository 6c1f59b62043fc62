"""Minimal SVG line plots (polylines, ticks, labels); no external renderer.

Figures are for human inspection only and are never parsed by tests.
"""

from __future__ import annotations

import math
from pathlib import Path

PALETTE = ("#1f6fb4", "#d95f02", "#1b9e77", "#7570b3", "#e7298a",
           "#66a61e", "#a6761d", "#666666")

_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 62, 16, 34, 46


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-12 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def line_plot(series, path, title: str = "", xlabel: str = "", ylabel: str = "",
              width: int = 640, height: int = 440) -> str:
    """Write a line plot; ``series`` is a list of (label, xs, ys)."""
    pts = [(x, y) for _, xs, ys in series for x, y in zip(xs, ys)
           if math.isfinite(x) and math.isfinite(y)]
    if pts:
        xlo = min(p[0] for p in pts)
        xhi = max(p[0] for p in pts)
        ylo = min(p[1] for p in pts)
        yhi = max(p[1] for p in pts)
    else:
        xlo, xhi, ylo, yhi = 0.0, 1.0, 0.0, 1.0
    if xhi - xlo < 1e-12:
        xlo, xhi = xlo - 0.5, xhi + 0.5
    if yhi - ylo < 1e-12:
        ylo, yhi = ylo - 0.5, yhi + 0.5
    pad = 0.04 * (yhi - ylo)
    ylo, yhi = ylo - pad, yhi + pad

    plot_w = width - _MARGIN_L - _MARGIN_R
    plot_h = height - _MARGIN_T - _MARGIN_B

    def sx(x: float) -> float:
        return _MARGIN_L + (x - xlo) / (xhi - xlo) * plot_w

    def sy(y: float) -> float:
        return _MARGIN_T + (yhi - y) / (yhi - ylo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2}" y="20" text-anchor="middle" '
                   f'font-size="14">{title}</text>')
    for t in _nice_ticks(xlo, xhi):
        if not xlo <= t <= xhi:
            continue
        x = sx(t)
        out.append(f'<line x1="{x:.1f}" y1="{_MARGIN_T + plot_h}" x2="{x:.1f}" '
                   f'y2="{_MARGIN_T + plot_h + 5}" stroke="#333"/>')
        out.append(f'<text x="{x:.1f}" y="{_MARGIN_T + plot_h + 18}" '
                   f'text-anchor="middle">{_fmt(t)}</text>')
    for t in _nice_ticks(ylo, yhi):
        if not ylo <= t <= yhi:
            continue
        y = sy(t)
        out.append(f'<line x1="{_MARGIN_L - 5}" y1="{y:.1f}" x2="{_MARGIN_L}" '
                   f'y2="{y:.1f}" stroke="#333"/>')
        out.append(f'<text x="{_MARGIN_L - 8}" y="{y + 4:.1f}" '
                   f'text-anchor="end">{_fmt(t)}</text>')
    if xlabel:
        out.append(f'<text x="{_MARGIN_L + plot_w / 2}" y="{height - 10}" '
                   f'text-anchor="middle">{xlabel}</text>')
    if ylabel:
        yc = _MARGIN_T + plot_h / 2
        out.append(f'<text x="16" y="{yc}" text-anchor="middle" '
                   f'transform="rotate(-90 16 {yc})">{ylabel}</text>')

    for i, (label, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        coords = " ".join(
            f"{sx(x):.1f},{sy(y):.1f}" for x, y in zip(xs, ys)
            if math.isfinite(x) and math.isfinite(y)
        )
        if coords:
            out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                       'stroke-width="1.6"/>')
        lx = _MARGIN_L + plot_w - 8
        ly = _MARGIN_T + 16 + 16 * i
        out.append(f'<text x="{lx}" y="{ly}" text-anchor="end" '
                   f'fill="{color}">{label}</text>')

    out.append("</svg>")
    svg = "\n".join(out) + "\n"
    if path is not None:
        p = Path(path)
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(svg)
    return svg
