"""Deterministic SVG drawings of unit-distance graphs."""

from __future__ import annotations

from typing import Sequence

from .graph import UnitDistanceGraph

SCALE = 100.0  # SVG units per unit distance
MARGIN = 20.0
PALETTE = {1: "#e41a1c", 2: "#377eb8", 3: "#4daf4a", 4: "#ffd92f", 5: "#984ea3"}
UNCOLOURED = "#222222"


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def render_svg(
    g: UnitDistanceGraph,
    colouring: Sequence[int] | None = None,
    radius: float | None = None,
) -> str:
    if colouring is not None and len(colouring) != g.n:
        raise ValueError("colouring length does not match the vertex count")
    if g.n:
        xs = g.coords[:, 0] * SCALE
        ys = -g.coords[:, 1] * SCALE  # SVG y grows downwards
        x0, x1 = float(xs.min()), float(xs.max())
        y0, y1 = float(ys.min()), float(ys.max())
    else:
        xs = ys = []
        x0 = x1 = y0 = y1 = 0.0
    r = radius if radius is not None else (6.0 if g.n <= 200 else 2.5)
    width = x1 - x0 + 2 * MARGIN
    height = y1 - y0 + 2 * MARGIN
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(x0 - MARGIN)} {_fmt(y0 - MARGIN)} {_fmt(width)} {_fmt(height)}" '
        f'width="{_fmt(width)}" height="{_fmt(height)}">',
        '<g id="edges" stroke="#888888" stroke-width="1">',
    ]
    for u, v in g.edges:
        out.append(
            f'<line x1="{_fmt(xs[u])}" y1="{_fmt(ys[u])}" x2="{_fmt(xs[v])}" y2="{_fmt(ys[v])}"/>'
        )
    out.append("</g>")
    out.append('<g id="vertices" stroke="#000000" stroke-width="0.5">')
    for i in range(g.n):
        fill = PALETTE.get(colouring[i], UNCOLOURED) if colouring is not None else UNCOLOURED
        out.append(f'<circle cx="{_fmt(xs[i])}" cy="{_fmt(ys[i])}" r="{_fmt(r)}" fill="{fill}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
