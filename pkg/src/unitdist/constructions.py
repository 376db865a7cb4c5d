"""Recipes for every named unit-distance graph.

Each builder returns a canonical graph (vertices sorted by coefficient
vector), so two builds of the same name are identical.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .field import ONE, ZERO, FieldElement
from .geometry import (
    ORIGIN,
    Composition,
    Point,
    ReflectX,
    Rotation,
    Translation,
    double_arcsin_rotation,
    rotation60,
    rotation_from_sin,
    within_radius,
)
from .graph import UnitDistanceGraph, find_h_copies, graph_from_points, transform, union

R3 = FieldElement.radical(3)
R11 = FieldElement.radical(11)
R33 = FieldElement.radical(33)
R7 = FieldElement.radical(7)

CONSTRUCTION_IDS = ("H", "J", "K", "L", "T", "U", "V", "W", "M", "N", "S_A", "Y", "G", "MOSER")


def P(x, y) -> Point:
    return Point.of(x, y)


def _hexagon(centre: Point = ORIGIN) -> list[Point]:
    return [rotation60(k).apply(P(1, 0)) + centre for k in range(6)]


def _clockwise_from(points: list[Point], first: Point) -> list[Point]:
    # points are 6 vectors at 60° spacing listed anticlockwise
    i = points.index(first)
    ring = points[i:] + points[:i]
    return [ring[0]] + ring[1:][::-1]


# --- H, J, K, L -----------------------------------------------------------


def build_h() -> UnitDistanceGraph:
    hexagon = _hexagon()
    return graph_from_points([ORIGIN] + hexagon, {"centre": [ORIGIN], "hexagon": hexagon})


def build_j() -> UnitDistanceGraph:
    """13 translates of H: centred at the origin, the 6 unit vectors and the 6 √3 vectors."""
    units = _hexagon()
    centres = [ORIGIN] + units + [units[k] + units[(k + 1) % 6] for k in range(6)]
    points = []
    for c in centres:
        points.append(c)
        points.extend(u + c for u in units)
    linking = _clockwise_from([u.scale(2) for u in units], P(2, 0))
    return graph_from_points(
        points,
        {"centre": [ORIGIN], "linking": linking, "A": [P(-2, 0)], "B": [P(2, 0)]},
    )


def build_k() -> UnitDistanceGraph:
    j = build_j()
    clockwise = double_arcsin_rotation(Fraction(1, 4)).inverse()
    return union(j, transform(j, clockwise))


def build_l() -> UnitDistanceGraph:
    k = build_k()
    a, b = P(-2, 0), P(2, 0)
    rot = double_arcsin_rotation(Fraction(1, 8), centre=a)
    g = union(k, transform(k, rot))
    # the copies' own A/B labels are ambiguous here; B' is the image of B
    ann = {name: idx for name, idx in g.annotations.items() if name.rstrip("'") not in ("A", "B")}
    ann.update(A=[g.index(a)], B=[g.index(b)], **{"B'": [g.index(rot.apply(b))]})
    return UnitDistanceGraph(g.vertices, ann, g.edges)


# --- spindles: MOSER, T, U ----------------------------------------------------

# Spindle with base YZ on the x-axis and tip X above it; the rhombus vertices
# solve |X-r| = |Y-r| = 1 (resp. Z).  P and Q lie on the base line and form an
# equilateral triangle with X.
_TIP = P(0, R11 / 2)
_BASE = [P(Fraction(-1, 2), 0), P(Fraction(1, 2), 0)]
_RHOMBI = [
    Point(R33 / 12 - Fraction(1, 4), R11 / 4 - R3 / 12),
    Point(-(R33 / 12) - Fraction(1, 4), R11 / 4 + R3 / 12),
    Point(Fraction(1, 4) - R33 / 12, R11 / 4 - R3 / 12),
    Point(R33 / 12 + Fraction(1, 4), R11 / 4 + R3 / 12),
]
_T_EXTRA = [Point(-(R33 / 6), ZERO), Point(R33 / 6, ZERO)]


def build_moser() -> UnitDistanceGraph:
    return graph_from_points([_TIP] + _BASE + _RHOMBI, {"tip": [_TIP], "base": _BASE})


def build_t() -> UnitDistanceGraph:
    return graph_from_points(
        [_TIP] + _BASE + _RHOMBI + _T_EXTRA,
        {"tip": [_TIP], "base": _BASE, "PQ": _T_EXTRA},
    )


def build_u() -> UnitDistanceGraph:
    """T and its two images under 120° rotations about the centroid of X, P, Q."""
    centroid = P(0, R11 / 6)
    t = build_t()
    points = list(t.vertices)
    for k in (2, 4):
        rot = rotation60(k, centre=centroid)
        points += [rot.apply(p) for p in t.vertices]
    return graph_from_points(points)


# --- V, W, M, N ---------------------------------------------------------------


def v_directions() -> list[Point]:
    """The 30 unit vectors at angles i·60° + j·arcsin(1/√12), i in 0..5, j in -2..2."""
    tilt = rotation_from_sin(R3 / 6)  # sin = 1/√12, cos = √33/6
    out = []
    for i in range(6):
        base = rotation60(i)
        for j in range(-2, 3):
            r = base
            step = tilt if j > 0 else tilt.inverse()
            for _ in range(abs(j)):
                r = r.compose(step)
            out.append(Point(r.cos, r.sin))
    return out


def build_v() -> UnitDistanceGraph:
    return graph_from_points([ORIGIN] + v_directions(), {"centre": [ORIGIN]})


def _w_points() -> list[Point]:
    dirs = v_directions()
    three = FieldElement.from_rational(3)
    seen: dict[Point, None] = {}
    for u in dirs:
        for v in dirs:
            s = u + v
            if s not in seen and within_radius(s, three):
                seen[s] = None
    return list(seen)


def build_w() -> UnitDistanceGraph:
    pts = _w_points()
    h = [ORIGIN] + _hexagon()
    return graph_from_points(pts, {"initialising": h})


def build_m() -> UnitDistanceGraph:
    """W together with its six translates taking the origin to the hexagon vertices of H."""
    w = _w_points()
    points = list(w)
    for h in _hexagon():
        points += [p + h for p in w]
    init = [ORIGIN] + _hexagon()
    return graph_from_points(points, {"initialising": init})


def build_n(m: UnitDistanceGraph | None = None, l: UnitDistanceGraph | None = None) -> UnitDistanceGraph:
    """52 copies of M, one per H-copy of L, aligned so that M's central H lands on it.

    Hexagon vertex ``hexagon[0]`` of each L copy receives M's (1, 0); M has the
    dihedral symmetry of H so any of the 12 alignments gives the same graph.
    """
    m = m or build("M")
    l = l or build("L")
    points = []
    for hc in find_h_copies(l):
        c = l.vertices[hc.centre]
        u = l.vertices[hc.hexagon[0]] - c
        iso = Composition((Translation(c), Rotation(u.x, u.y)))
        points += [iso.apply(p) for p in m.vertices]
    return graph_from_points(points)


# --- S_A, Y, G -------------------------------------------------------------------


def s_point_table() -> list[Point]:
    """The generating point set for G, transcribed coordinate by coordinate."""
    q = Fraction
    return [
        P(0, 0), P(q(1, 3), 0), P(1, 0), P(2, 0), Point((R33 - 3) / 6, ZERO),
        Point(ONE / 2, R3 / 6), Point(ONE, R3 / 3), Point(ONE * q(3, 2), R3 / 2),
        Point(ONE * q(7, 6), R11 / 6),
        Point(ONE * q(1, 6), (R3 * 2 - R11) / 6), Point(ONE * q(5, 6), (R3 * 2 - R11) / 6),
        Point(ONE * q(2, 3), (R11 - R3) / 6), Point(ONE * q(2, 3), (R3 * 3 - R11) / 6),
        Point(R33 / 6, R3 / 6),
        Point((R33 + 3) / 6, R3 / 3),
        Point((R33 + 1) / 6, (R3 * 3 - R11) / 6),
        Point((R33 - 1) / 6, (R3 * 3 - R11) / 6),
        Point((R33 + 1) / 6, (R11 - R3) / 6),
        Point((R33 - 1) / 6, (R11 - R3) / 6),
        Point((R33 - 2) / 6, (R3 * 2 - R11) / 6),
        Point((R33 - 4) / 6, (R3 * 2 - R11) / 6),
        Point((R33 + 13) / 12, (R11 - R3) / 12),
        Point((R33 + 11) / 12, (R3 + R11) / 12),
        Point((R33 + 9) / 12, (R11 - R3) / 4),
        Point((R33 + 9) / 12, (R3 * 3 + R11) / 12),
        Point((R33 + 7) / 12, (R3 + R11) / 12),
        Point((R33 + 7) / 12, (R3 * 3 - R11) / 12),
        Point((R33 + 5) / 12, (R3 * 5 - R11) / 12),
        Point((R33 + 5) / 12, (R11 - R3) / 12),
        Point((R33 + 3) / 12, (R11 * 3 - R3 * 5) / 12),
        Point((R33 + 3) / 12, (R3 + R11) / 12),
        Point((R33 + 3) / 12, (R3 * 3 - R11) / 12),
        Point((R33 + 1) / 12, (R11 - R3) / 12),
        Point((R33 - 1) / 12, (R3 * 3 - R11) / 12),
        Point((R33 - 3) / 12, (R11 - R3) / 12),
        Point((15 - R33) / 12, (R11 - R3) / 4),
        Point((15 - R33) / 12, (R3 * 7 - R11 * 3) / 12),
        Point((13 - R33) / 12, (R3 * 3 - R11) / 12),
        Point((11 - R33) / 12, (R11 - R3) / 12),
    ]


def _dihedral_orbit(points: list[Point]) -> list[Point]:
    out = []
    for k in range(6):
        rot = rotation60(k)
        for p in points:
            out.append(rot.apply(p))
            out.append(rot.apply(ReflectX().apply(p)))
    return out


def build_s_a() -> UnitDistanceGraph:
    return graph_from_points(_dihedral_orbit(s_point_table()))


def build_y() -> UnitDistanceGraph:
    s_a = build_s_a()
    s_b = transform(s_a, double_arcsin_rotation(Fraction(1, 4)))
    third = Fraction(1, 3)
    return union(s_a, s_b).without([P(third, 0), P(-third, 0)])


def g_rotations() -> tuple[Rotation, Rotation]:
    """Rotations about (-2, 0) by π/2 + arcsin(1/8) and π/2 − arcsin(1/8)."""
    centre = P(-2, 0)
    s = R7 * Fraction(3, 8)  # cos(arcsin(1/8)) = √63/8
    c = FieldElement.from_rational(Fraction(1, 8))
    return Rotation(-c, s, centre), Rotation(c, s, centre)


def build_g() -> UnitDistanceGraph:
    y = build_y()
    ra, rb = g_rotations()
    return union(transform(y, ra), transform(y, rb))


_BUILDERS: dict[str, Callable[[], UnitDistanceGraph]] = {
    "H": build_h,
    "J": build_j,
    "K": build_k,
    "L": build_l,
    "T": build_t,
    "U": build_u,
    "V": build_v,
    "W": build_w,
    "M": build_m,
    "N": build_n,
    "S_A": build_s_a,
    "Y": build_y,
    "G": build_g,
    "MOSER": build_moser,
}


class UnknownConstructionError(KeyError):
    pass


@lru_cache(maxsize=None)
def build(name: str) -> UnitDistanceGraph:
    """Build a named graph in canonical vertex order (cached per process)."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownConstructionError(
            f"unknown construction {name!r}; valid names: {', '.join(CONSTRUCTION_IDS)}"
        ) from None
    return builder().canonical()


# Vertex, edge, H-copy and spindle counts the recipes must reproduce.
FIXTURES: dict[str, dict[str, int]] = {
    "H": {"vertices": 7, "edges": 12, "max_degree": 6},
    "T": {"vertices": 9},
    "U": {"vertices": 15, "spindles": 3},
    "J": {"vertices": 31, "h_copies": 13},
    "K": {"vertices": 61, "h_copies": 26},
    "L": {"vertices": 121, "h_copies": 52},
    "V": {"vertices": 31, "max_degree": 30},
    "W": {"vertices": 301},
    "M": {"vertices": 1345},
    "S_A": {"vertices": 397},
    "G": {"vertices": 1581},
    "N": {"vertices": 20425},
}
