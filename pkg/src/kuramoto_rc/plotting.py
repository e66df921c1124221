"""Minimal SVG line plots. CSV is the canonical output; these are a
convenience for eyeballing sweep results without a plotting stack."""

from __future__ import annotations

import math

import numpy as np

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 16, 28, 46
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _nice_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(1, n - 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if mag * mult >= raw:
            step = mag * mult
            break
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + 1e-12 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-3:
        return f"{v:.1e}"
    return f"{v:g}"


def write_line_plot(path, curves, *, title: str = "", xlabel: str = "",
                    ylabel: str = "", logy: bool = False) -> None:
    """Write an SVG with one polyline per (x, y, label) curve."""
    curves = [(np.asarray(x, float), np.asarray(y, float), str(label))
              for x, y, label in curves]
    xs = np.concatenate([c[0] for c in curves])
    ys = np.concatenate([c[1] for c in curves])
    if logy:
        ys = ys[ys > 0]
        if ys.size == 0:
            logy = False
            ys = np.concatenate([c[1] for c in curves])
    x_lo, x_hi = float(xs.min()), float(xs.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if logy:
        y_lo, y_hi = math.log10(ys.min()), math.log10(ys.max())
    else:
        y_lo, y_hi = float(ys.min()), float(ys.max())
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    pw = WIDTH - MARGIN_L - MARGIN_R
    ph = HEIGHT - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + (x - x_lo) / (x_hi - x_lo) * pw

    def py(y):
        if logy:
            y = math.log10(y) if y > 0 else y_lo
        return MARGIN_T + ph - (y - y_lo) / (y_hi - y_lo) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="18" text-anchor="middle" font-size="14">{title}</text>',
    ]
    axis = f'stroke="#333" stroke-width="1"'
    parts.append(f'<line x1="{MARGIN_L}" y1="{MARGIN_T + ph}" x2="{MARGIN_L + pw}" '
                 f'y2="{MARGIN_T + ph}" {axis}/>')
    parts.append(f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
                 f'y2="{MARGIN_T + ph}" {axis}/>')

    for t in _nice_ticks(x_lo, x_hi):
        x = px(t)
        parts.append(f'<line x1="{x}" y1="{MARGIN_T + ph}" x2="{x}" y2="{MARGIN_T + ph + 4}" {axis}/>')
        parts.append(f'<text x="{x}" y="{MARGIN_T + ph + 18}" text-anchor="middle">{_fmt(t)}</text>')
    y_ticks = _nice_ticks(y_lo, y_hi)
    for t in y_ticks:
        v = 10.0 ** t if logy else t
        y = py(v)
        parts.append(f'<line x1="{MARGIN_L - 4}" y1="{y}" x2="{MARGIN_L}" y2="{y}" {axis}/>')
        parts.append(f'<text x="{MARGIN_L - 7}" y="{y + 4}" text-anchor="end">{_fmt(v)}</text>')

    parts.append(f'<text x="{MARGIN_L + pw / 2}" y="{HEIGHT - 8}" text-anchor="middle">{xlabel}</text>')
    parts.append(f'<text x="16" y="{MARGIN_T + ph / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 16 {MARGIN_T + ph / 2})">{ylabel}</text>')

    for k, (cx, cy, label) in enumerate(curves):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(cx, cy)
                       if not logy or y > 0)
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = MARGIN_T + 14 + 16 * k
        parts.append(f'<line x1="{MARGIN_L + pw - 120}" y1="{ly - 4}" '
                     f'x2="{MARGIN_L + pw - 100}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{MARGIN_L + pw - 94}" y="{ly}">{label}</text>')

    parts.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(parts))
