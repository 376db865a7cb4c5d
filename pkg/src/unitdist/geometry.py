"""Exact planar points and the isometries used by the constructions.

Angles never appear as numbers: every rotation is an exact (cos, sin) pair in
the field, typically obtained from an arcsine.  Clockwise rotations carry a
negative sine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .field import ONE, ZERO, FieldElement, fe_sign

SQRT3 = FieldElement.radical(3)
HALF = FieldElement.from_rational(Fraction(1, 2))

# Radicands whose square roots are representable as ±1·(rational)·(basis radical).
_SQUAREFREE_BASIS = {1, 3, 5, 7, 11, 15, 21, 33, 35, 55, 77, 105, 165, 231, 385, 1155}


class UnrepresentableError(ValueError):
    """A cosine or sine needed by a rotation lies outside the field."""


def _f(value) -> FieldElement:
    if isinstance(value, FieldElement):
        return value
    return FieldElement.from_rational(Fraction(value))


@dataclass(frozen=True)
class Point:
    x: FieldElement
    y: FieldElement

    @classmethod
    def of(cls, x, y) -> Point:
        return cls(_f(x), _f(y))

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Point:
        return Point(-self.x, -self.y)

    def scale(self, q) -> Point:
        return Point(self.x * q, self.y * q)

    def norm2(self) -> FieldElement:
        return self.x * self.x + self.y * self.y

    def approx(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def sort_key(self) -> tuple:
        return (self.x.sort_key(), self.y.sort_key())

    def to_json(self) -> list:
        fx, fy = self.approx()
        return [self.x.to_json(), self.y.to_json(), fx, fy]

    @classmethod
    def from_json(cls, data) -> Point:
        if not isinstance(data, list) or len(data) < 2:
            raise ValueError("point must be [coeffs_x, coeffs_y, ...]")
        return cls(FieldElement.from_json(data[0]), FieldElement.from_json(data[1]))

    def __repr__(self) -> str:
        fx, fy = self.approx()
        return f"Point({fx:.6f}, {fy:.6f})"


ORIGIN = Point(ZERO, ZERO)


def dist2(p: Point, q: Point) -> FieldElement:
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def within_radius(p: Point, r2) -> bool:
    """True iff |p| ≤ √r2."""
    return fe_sign(dist2(p, ORIGIN) - _f(r2)) <= 0


def sqrt_in_field(value: FieldElement) -> FieldElement:
    """Exact nonnegative square root of ``value`` when it is q²·n for a basis radical √n.

    Only square roots of this simple shape occur in the constructions; anything
    else raises :class:`UnrepresentableError`.
    """
    if value.is_zero():
        return ZERO
    if not value.is_rational() or value.rational_part() < 0:
        raise UnrepresentableError(f"√({value}) is not representable")
    q = value.rational_part()
    for n in sorted(_SQUAREFREE_BASIS):
        r = q / n
        num, den = r.numerator, r.denominator
        rn, rd = _isqrt_exact(num), _isqrt_exact(den)
        if rn is not None and rd is not None:
            return FieldElement.radical(n) * Fraction(rn, rd)
    raise UnrepresentableError(f"√({q}) is not representable")


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


class Isometry:
    """Base class; subclasses implement :meth:`apply`."""

    def apply(self, p: Point) -> Point:
        raise NotImplementedError

    def __call__(self, p: Point) -> Point:
        return self.apply(p)

    def then(self, other: Isometry) -> Composition:
        """``other`` applied after ``self``."""
        return Composition((other, self))


@dataclass(frozen=True)
class Rotation(Isometry):
    cos: FieldElement
    sin: FieldElement
    centre: Point = ORIGIN

    def __post_init__(self) -> None:
        if self.cos * self.cos + self.sin * self.sin != ONE:
            raise ValueError("cos² + sin² must equal 1")

    def apply(self, p: Point) -> Point:
        c = self.centre
        dx = p.x - c.x
        dy = p.y - c.y
        return Point(
            c.x + self.cos * dx - self.sin * dy,
            c.y + self.sin * dx + self.cos * dy,
        )

    def inverse(self) -> Rotation:
        return Rotation(self.cos, -self.sin, self.centre)

    def about(self, centre: Point) -> Rotation:
        return Rotation(self.cos, self.sin, centre)

    def compose(self, other: Rotation) -> Rotation:
        """Rotation angle sum; both must share a centre."""
        if self.centre != other.centre:
            raise ValueError("rotations about different centres")
        return Rotation(
            self.cos * other.cos - self.sin * other.sin,
            self.sin * other.cos + self.cos * other.sin,
            self.centre,
        )


@dataclass(frozen=True)
class Translation(Isometry):
    offset: Point

    def apply(self, p: Point) -> Point:
        return p + self.offset


@dataclass(frozen=True)
class ReflectX(Isometry):
    """Reflection in the x-axis (y ↦ −y)."""

    def apply(self, p: Point) -> Point:
        return Point(p.x, -p.y)


@dataclass(frozen=True)
class Composition(Isometry):
    """Applies its parts right to left, like function composition."""

    parts: tuple[Isometry, ...]

    def apply(self, p: Point) -> Point:
        for iso in reversed(self.parts):
            p = iso.apply(p)
        return p


class Identity(Isometry):
    def apply(self, p: Point) -> Point:
        return p


def rotation_from_sin(sin_value, cos_positive: bool = True, centre: Point = ORIGIN) -> Rotation:
    """Rotation with the given sine; the cosine sign is chosen by ``cos_positive``."""
    s = _f(sin_value)
    cos = sqrt_in_field(ONE - s * s)
    return Rotation(cos if cos_positive else -cos, s, centre)


def double_arcsin_rotation(x, centre: Point = ORIGIN) -> Rotation:
    """Anticlockwise rotation by 2·arcsin(x)."""
    x = Fraction(x)
    c = sqrt_in_field(FieldElement.from_rational(1 - x * x))
    return Rotation(
        FieldElement.from_rational(1 - 2 * x * x),
        c * (2 * x),
        centre,
    )


def rotation60(k: int = 1, centre: Point = ORIGIN) -> Rotation:
    """Rotation by k·60 degrees."""
    table = [
        (ONE, ZERO),
        (HALF, SQRT3 * HALF),
        (-HALF, SQRT3 * HALF),
        (-ONE, ZERO),
        (-HALF, -(SQRT3 * HALF)),
        (HALF, -(SQRT3 * HALF)),
    ]
    c, s = table[k % 6]
    return Rotation(c, s, centre)


def unit_vector(rot: Rotation) -> Point:
    return Point(rot.cos, rot.sin)


def mapping_rotation(vector: Point, centre: Point = ORIGIN) -> Rotation:
    """Rotation about ``centre`` taking (1, 0) to the unit vector ``vector``."""
    return Rotation(vector.x, vector.y, centre)


def apply_all(iso: Isometry, points: Sequence[Point]) -> list[Point]:
    return [iso.apply(p) for p in points]
