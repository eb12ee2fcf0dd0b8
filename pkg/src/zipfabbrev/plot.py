"""Static SVG scatter of mean word length against the random baseline."""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple
from xml.sax.saxutils import escape

WIDTH = HEIGHT = 480
MARGIN = 60


def nice_ticks(lo: float, hi: float, target: int = 5) -> List[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = min((s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


def axis_range(values: Sequence[float]) -> Tuple[float, float]:
    lo, hi = min(values), max(values)
    pad = 0.08 * (hi - lo) if hi > lo else max(0.5, 0.1 * abs(hi))
    return lo - pad, hi + pad


def scatter_svg(points: Sequence[Tuple[str, float, float]], xlabel: str = "random baseline L_r",
                ylabel: str = "mean word length L") -> str:
    """One dot per ``(label, L_r, L)``; both axes share a range so the dashed
    ``L = L_r`` diagonal sits at 45 degrees."""
    if points:
        lo, hi = axis_range([v for _, x, y in points for v in (x, y)])
    else:
        lo, hi = 0.0, 1.0
    span = hi - lo
    plot = WIDTH - 2 * MARGIN

    def sx(v):
        return MARGIN + (v - lo) / span * plot

    def sy(v):
        return HEIGHT - MARGIN - (v - lo) / span * plot

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{plot}" height="{plot}" fill="white" stroke="black"/>',
        f'<line class="diagonal" x1="{sx(lo):.2f}" y1="{sy(lo):.2f}" x2="{sx(hi):.2f}" y2="{sy(hi):.2f}" '
        'stroke="gray" stroke-dasharray="8,4"/>',
    ]
    for t in nice_ticks(lo, hi):
        out.append(f'<line x1="{sx(t):.2f}" y1="{HEIGHT - MARGIN}" x2="{sx(t):.2f}" y2="{HEIGHT - MARGIN + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{HEIGHT - MARGIN + 18}" text-anchor="middle">{t:g}</text>')
        out.append(f'<line x1="{MARGIN - 5}" y1="{sy(t):.2f}" x2="{MARGIN}" y2="{sy(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{MARGIN - 8}" y="{sy(t) + 4:.2f}" text-anchor="end">{t:g}</text>')
    out.append(f'<text x="{WIDTH / 2}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="15" y="{HEIGHT / 2}" text-anchor="middle" '
               f'transform="rotate(-90 15 {HEIGHT / 2})">{escape(ylabel)}</text>')
    for label, x, y in points:
        out.append(
            f'<circle class="point" cx="{sx(x):.3f}" cy="{sy(y):.3f}" r="4" fill="steelblue" '
            f'data-lr="{x!r}" data-l="{y!r}"><title>{escape(label)}</title></circle>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
