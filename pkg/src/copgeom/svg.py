"""Deterministic SVG rendering of drawings."""

from __future__ import annotations

import numpy as np

from .geometry import Drawing


def _num(x: float) -> str:
    return f"{x:.3f}"


def emit_svg(d: Drawing, *, width: float = 800.0, margin: float = 20.0,
             vertex_radius: float | None = None, show_disks: bool = False,
             stroke: float = 1.0) -> str:
    """SVG text: one circle per vertex, one line or polyline per edge.

    With ``show_disks`` every vertex also gets a translucent disk of radius
    r/2, so two disks overlap exactly when the vertices are within r.
    """
    X = np.asarray(d.coords, float)
    pts = [X] + [np.asarray(p, float) for p in (d.edge_geometry or {}).values()]
    allp = np.vstack(pts) if len(X) else np.zeros((1, 2))
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    pad = d.r / 2 if show_disks else 0.0
    lo, hi = lo - pad, hi + pad
    span = max(float(np.max(hi - lo)), 1e-12)
    scale = (width - 2 * margin) / span
    height = 2 * margin + float(hi[1] - lo[1]) * scale

    def tx(p):
        # y axis points down in SVG
        return margin + (p[0] - lo[0]) * scale, margin + (hi[1] - p[1]) * scale

    vr = vertex_radius if vertex_radius is not None else max(1.0, min(4.0, 0.15 * d.r * scale))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
    ]
    if show_disks:
        out.append('<g fill="#4a90d9" fill-opacity="0.12" stroke="none">')
        rr = d.r / 2 * scale
        for p in X:
            x, y = tx(p)
            out.append(f'<circle class="disk" cx="{_num(x)}" cy="{_num(y)}" r="{_num(rr)}"/>')
        out.append("</g>")
    out.append(f'<g stroke="black" stroke-width="{_num(stroke)}" fill="none">')
    for u, v in d.graph.edges():
        P = d.polyline(u, v)
        if len(P) == 2:
            (x1, y1), (x2, y2) = tx(P[0]), tx(P[1])
            out.append(f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}"/>')
        else:
            s = " ".join(f"{_num(a)},{_num(b)}" for a, b in map(tx, P))
            out.append(f'<polyline points="{s}"/>')
    out.append("</g>")
    out.append('<g fill="black" stroke="none">')
    for p in X:
        x, y = tx(p)
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{_num(vr)}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
