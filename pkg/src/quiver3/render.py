"""SVG drawings of realizations.

H2 uses the Poincare disk, S2 an orthographic view of the upper hemisphere
(back halves dashed), E2 the affine plane.  A list of realizations is drawn
as a row of frames.
"""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

from .geometry import Kind, Realization

FRAME = 220
RADIUS = 90
COLORS = ("#1f77b4", "#d62728", "#2ca02c")


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _disk_point(v) -> tuple:
    x1, x2, x0 = np.asarray(v, dtype=float)
    norm = math.sqrt(max(x0 * x0 - x1 * x1 - x2 * x2, 1e-300))
    x1, x2, x0 = x1 / norm, x2 / norm, x0 / norm
    if x0 < 0:
        x1, x2, x0 = -x1, -x2, -x0
    return x1 / (1 + x0), x2 / (1 + x0)


def _h2_line(v, color, cx, cy) -> str:
    a, b, c = (float(x) for x in v)
    if abs(c) < 1e-12:
        n = math.hypot(a, b) or 1.0
        dx, dy = -b / n, a / n
        return (f'<line x1="{_fmt(cx - RADIUS * dx)}" y1="{_fmt(cy - RADIUS * dy)}" '
                f'x2="{_fmt(cx + RADIUS * dx)}" y2="{_fmt(cy + RADIUS * dy)}" stroke="{color}"/>')
    ox, oy = a / c, b / c
    rad2 = ox * ox + oy * oy - 1
    if rad2 <= 0:
        return ""
    return (f'<circle cx="{_fmt(cx + RADIUS * ox)}" cy="{_fmt(cy + RADIUS * oy)}" '
            f'r="{_fmt(RADIUS * math.sqrt(rad2))}" fill="none" stroke="{color}" clip-path="url(#disk{int(cx)})"/>')


def _s2_circle(v, color, cx, cy) -> str:
    n = np.asarray(v, dtype=float)
    n = n / np.linalg.norm(n)
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(n, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    front, back = [], []
    for i in range(121):
        t = 2 * math.pi * i / 120
        p = math.cos(t) * e1 + math.sin(t) * e2
        pt = f"{_fmt(cx + RADIUS * p[0])},{_fmt(cy - RADIUS * p[1])}"
        (front if p[2] >= 0 else back).append(pt)
    out = []
    if front:
        out.append(f'<polyline points="{" ".join(front)}" fill="none" stroke="{color}"/>')
    if back:
        out.append(f'<polyline points="{" ".join(back)}" fill="none" stroke="{color}" stroke-dasharray="3,3"/>')
    return "".join(out)


def _e2_line(v, color, cx, cy) -> str:
    a, b, c = (float(x) for x in v)
    n = math.hypot(a, b)
    if n < 1e-12:
        return ""
    # points x with a x + b y + c = 0, scaled so unit distance maps to RADIUS / 2
    scale = RADIUS / 2
    px, py = -c * a / (n * n), -c * b / (n * n)
    dx, dy = -b / n, a / n
    length = 4.0
    x1, y1 = px - length * dx, py - length * dy
    x2, y2 = px + length * dx, py + length * dy
    return (f'<line x1="{_fmt(cx + scale * x1)}" y1="{_fmt(cy - scale * y1)}" '
            f'x2="{_fmt(cx + scale * x2)}" y2="{_fmt(cy - scale * y2)}" stroke="{color}"/>')


def _frame(R: Realization, index: int) -> str:
    cx = FRAME * index + FRAME / 2
    cy = FRAME / 2
    parts = [f'<g id="frame{index}">']
    name = R.space.name
    if name == "H2":
        parts.append(f'<clipPath id="disk{int(cx)}"><circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{RADIUS}"/></clipPath>')
        parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{RADIUS}" fill="none" stroke="black"/>')
    elif name == "S2":
        parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{RADIUS}" fill="none" stroke="#888"/>')
    else:
        parts.append(f'<rect x="{_fmt(cx - RADIUS)}" y="{_fmt(cy - RADIUS)}" width="{2 * RADIUS}" '
                     f'height="{2 * RADIUS}" fill="none" stroke="#888"/>')
    for i, v in enumerate(R.vectors):
        color = COLORS[i]
        if R.kind is Kind.ROTATION:
            x, y = _disk_point(v)
            parts.append(f'<circle class="point" cx="{_fmt(cx + RADIUS * x)}" cy="{_fmt(cy - RADIUS * y)}" '
                         f'r="3" fill="{color}"/>')
        elif name == "H2":
            parts.append(_h2_line(v, color, cx, cy))
        elif name == "S2":
            parts.append(_s2_circle(v, color, cx, cy))
        else:
            parts.append(_e2_line(v, color, cx, cy))
    label = escape(R.quiver.text()) if R.quiver is not None else ""
    parts.append(f'<text x="{_fmt(cx)}" y="{FRAME - 8}" font-size="10" text-anchor="middle">{label}</text>')
    parts.append("</g>")
    return "".join(parts)


def render(realizations) -> str:
    """SVG document with one frame per realization."""
    if isinstance(realizations, Realization):
        realizations = [realizations]
    realizations = list(realizations)
    width = FRAME * max(1, len(realizations))
    body = "\n".join(_frame(R, i) for i, R in enumerate(realizations))
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{FRAME}" '
        f'viewBox="0 0 {width} {FRAME}">\n{body}\n</svg>\n'
    )
