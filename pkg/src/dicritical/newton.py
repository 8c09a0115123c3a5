"""Newton polygon of a bivariate polynomial and the edge position test.

The polygon is the chain of compact faces of the convex hull of
support + (positive quadrant): vertices sorted by increasing first
coordinate, strictly decreasing second coordinate, consecutive slopes
strictly increasing. Each edge carries its primitive inner normal, the
weight pair that selects it.

A point s0 = (a0, b0) on the supporting line of weight (alpha, beta) is
either strictly interior to the selected face or outside/an endpoint;
this is the whole content of the position test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import NotOnLineD, ZeroPolynomial


@dataclass(frozen=True)
class Edge:
    start: tuple
    end: tuple
    normal: tuple  # primitive (alpha, beta), positive entries


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple
    edges: tuple


class Position(Enum):
    OUTSIDE_OR_ENDPOINT = "OutsideOrEndpoint"
    STRICTLY_INTERIOR = "StrictlyInterior"


def newton_polygon(f):
    """Lower-left hull of the support of f.

    For every positive weight pair the face minimising the weight equals
    the edge data of the corresponding monomial valuation.
    """
    if f.is_zero():
        raise ZeroPolynomial("Newton polygon of 0")
    support = sorted(f.terms)
    # keep, per first coordinate, the minimal second coordinate
    best = {}
    for a, b in support:
        if a not in best or b < best[a]:
            best[a] = b
    pts = sorted(best.items())
    # Pareto frontier: strictly decreasing b as a grows
    stair = []
    for a, b in pts:
        if stair and b >= stair[-1][1]:
            continue
        stair.append((a, b))
    # lower convex hull of the staircase (slopes strictly increasing)
    hull = []
    for p in stair:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    edges = []
    for s, e in zip(hull, hull[1:]):
        da, db = e[0] - s[0], s[1] - e[1]
        g = math.gcd(da, db)
        edges.append(Edge(s, e, (db // g, da // g)))
    return NewtonPolygon(tuple(hull), tuple(edges))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def position_test(s0, e):
    """Locate s0 = (a0, b0) relative to the face cut out by the edge data.

    Requires a0*alpha + b0*beta = gamma (s0 on the supporting line);
    strictly interior means b_min < b0 < b_max.
    """
    a0, b0 = s0
    if e.valuation.weight(a0, b0) != e.gamma:
        raise NotOnLineD(
            f"({a0},{b0}) has weight {e.valuation.weight(a0, b0)}, the edge sits on {e.gamma}"
        )
    if e.b_min < b0 < e.b_max:
        return Position.STRICTLY_INTERIOR
    return Position.OUTSIDE_OR_ENDPOINT


# ---------------------------------------------------------------------------
# rendering


def render_ascii(f, s0=None, valuation=None):
    """Plain text picture of the support, hull vertices and optional s0."""
    polygon = newton_polygon(f)
    max_a = max(max(a for a, _ in f.terms), s0[0] if s0 else 0)
    max_b = max(max(b for _, b in f.terms), s0[1] if s0 else 0)
    vertex_set = set(polygon.vertices)
    grid = [["." for _ in range(max_a + 1)] for _ in range(max_b + 1)]
    for a, b in f.terms:
        grid[b][a] = "*"
    for a, b in vertex_set:
        grid[b][a] = "o"
    if s0 is not None:
        a0, b0 = s0
        grid[b0][a0] = "@" if grid[b0][a0] == "." else "#"
    lines = []
    for b in range(max_b, -1, -1):
        lines.append(f"{b:>3} | " + " ".join(grid[b]))
    lines.append("    +-" + "--" * (max_a + 1))
    lines.append("      " + " ".join(str(a % 10) for a in range(max_a + 1)))
    lines.append("legend: * support, o hull vertex, @ s0, # s0 on support")
    if valuation is not None:
        lines.append(f"weights: ({valuation.alpha},{valuation.beta})")
    return "\n".join(lines)


def render_svg(f, s0=None, valuation=None, size=400):
    """Standalone SVG of the polygon with hull, optional s0 and line D."""
    polygon = newton_polygon(f)
    max_a = max(max(a for a, _ in f.terms), s0[0] if s0 else 0, 1)
    max_b = max(max(b for _, b in f.terms), s0[1] if s0 else 0, 1)
    pad = 40
    span = max(max_a, max_b)
    scale = (size - 2 * pad) / span

    def pt(a, b):
        return (pad + a * scale, size - pad - b * scale)

    bits = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for i in range(span + 1):
        x0, y0 = pt(i, 0)
        x1, y1 = pt(i, span)
        bits.append(
            f'<line x1="{x0:.1f}" y1="{y0:.1f}" x2="{x1:.1f}" y2="{y1:.1f}" '
            'stroke="#eeeeee"/>'
        )
        x0, y0 = pt(0, i)
        x1, y1 = pt(span, i)
        bits.append(
            f'<line x1="{x0:.1f}" y1="{y0:.1f}" x2="{x1:.1f}" y2="{y1:.1f}" '
            'stroke="#eeeeee"/>'
        )
    if valuation is not None and s0 is not None:
        # the supporting line alpha*a + beta*b = gamma through s0
        gamma = valuation.weight(*s0)
        pts = []
        if valuation.alpha:
            pts.append((gamma / valuation.alpha, 0.0))
        if valuation.beta:
            pts.append((0.0, gamma / valuation.beta))
        if len(pts) == 2:
            (xa, ya), (xb, yb) = pt(*pts[0]), pt(*pts[1])
            bits.append(
                f'<line x1="{xa:.1f}" y1="{ya:.1f}" x2="{xb:.1f}" y2="{yb:.1f}" '
                'stroke="#5588ff" stroke-dasharray="4 3"/>'
            )
    if len(polygon.vertices) > 1:
        path = " ".join(f"{pt(a, b)[0]:.1f},{pt(a, b)[1]:.1f}" for a, b in polygon.vertices)
        bits.append(f'<polyline points="{path}" fill="none" stroke="black" stroke-width="2"/>')
    for a, b in f.terms:
        x, y = pt(a, b)
        bits.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="3" fill="#999999"/>')
    for idx, (a, b) in enumerate(polygon.vertices, 1):
        x, y = pt(a, b)
        bits.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="5" fill="black"/>')
        bits.append(
            f'<text x="{x + 7:.1f}" y="{y - 7:.1f}" font-size="12">({a},{b})</text>'
        )
    if s0 is not None:
        x, y = pt(*s0)
        bits.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="5" fill="#dd3333"/>')
        bits.append(f'<text x="{x + 7:.1f}" y="{y + 14:.1f}" font-size="12" fill="#dd3333">s0</text>')
    bits.append("</svg>")
    return "\n".join(bits)
