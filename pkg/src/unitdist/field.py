"""Exact arithmetic in the real field Q(√3, √5, √7, √11).

An element is stored as 16 integer numerators over one shared positive
denominator, one numerator per squarefree product of the generators.  The
representation is kept canonical (``gcd(numerators, denominator) == 1``), so
equality and hashing reduce to tuple comparison, which is what exact vertex
deduplication relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Union

GENERATORS = (3, 5, 7, 11)

# Subsets of GENERATORS in the fixed serialisation order:
# (), (3), (5), (7), (11), (3,5), (3,7), (3,11), (5,7), ..., (3,5,7,11)
BASIS_SUBSETS: tuple[tuple[int, ...], ...] = tuple(
    s for r in range(len(GENERATORS) + 1) for s in combinations(GENERATORS, r)
)
BASIS_RADICANDS: tuple[int, ...] = tuple(math.prod(s) for s in BASIS_SUBSETS)
DIM = len(BASIS_SUBSETS)

_INDEX_OF_RADICAND = {n: i for i, n in enumerate(BASIS_RADICANDS)}
_MASK = [sum(1 << GENERATORS.index(g) for g in s) for s in BASIS_SUBSETS]
_INDEX_OF_MASK = {m: i for i, m in enumerate(_MASK)}


def _product_table() -> list[list[tuple[int, int]]]:
    # √a·√b = (∏ common generators)·√(symmetric difference)
    table = []
    for i in range(DIM):
        row = []
        for j in range(DIM):
            common = _MASK[i] & _MASK[j]
            factor = math.prod(g for b, g in enumerate(GENERATORS) if common >> b & 1)
            row.append((_INDEX_OF_MASK[_MASK[i] ^ _MASK[j]], factor))
        table.append(row)
    return table


_PRODUCT = _product_table()
_SQRT_FLOAT = tuple(math.sqrt(n) for n in BASIS_RADICANDS)

Rational = Union[int, Fraction]


class FieldElement:
    """Immutable exact real number Σ q_S·√(∏S) over subsets S of {3, 5, 7, 11}."""

    __slots__ = ("_num", "_den", "_hash", "_float")

    def __init__(self, numerators: Iterable[int], denominator: int = 1) -> None:
        num = tuple(int(n) for n in numerators)
        if len(num) != DIM:
            raise ValueError(f"expected {DIM} numerators, got {len(num)}")
        den = int(denominator)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = tuple(-n for n in num)
            den = -den
        g = math.gcd(den, *num)
        if g != 1:
            num = tuple(n // g for n in num)
            den //= g
        self._num = num
        self._den = den
        self._hash = None
        self._float = None

    @classmethod
    def _raw(cls, num: tuple[int, ...], den: int) -> FieldElement:
        # caller guarantees den > 0; only the gcd reduction remains
        g = math.gcd(den, *num)
        if g != 1:
            num = tuple(n // g for n in num)
            den //= g
        obj = cls.__new__(cls)
        obj._num = num
        obj._den = den
        obj._hash = None
        obj._float = None
        return obj

    # construction ---------------------------------------------------------

    @classmethod
    def from_rational(cls, q: Rational) -> FieldElement:
        q = Fraction(q)
        return cls._raw((q.numerator,) + (0,) * (DIM - 1), q.denominator)

    @classmethod
    def radical(cls, n: int) -> FieldElement:
        """Return √n for n a product of distinct members of {3, 5, 7, 11} (or 1)."""
        if n not in _INDEX_OF_RADICAND:
            raise ValueError(f"√{n} is not a basis radical of Q(√3, √5, √7, √11)")
        num = [0] * DIM
        num[_INDEX_OF_RADICAND[n]] = 1
        return cls._raw(tuple(num), 1)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Rational]) -> FieldElement:
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != DIM:
            raise ValueError(f"expected {DIM} coefficients, got {len(fr)}")
        den = math.lcm(*(f.denominator for f in fr))
        return cls._raw(tuple(f.numerator * (den // f.denominator) for f in fr), den)

    # accessors ------------------------------------------------------------

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self._den) for n in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational_part(self) -> Fraction:
        return Fraction(self._num[0], self._den)

    # ring operations ------------------------------------------------------

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.from_rational(other)
        return NotImplemented

    def __add__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d1, d2 = self._den, other._den
        if d1 == d2:
            return FieldElement._raw(tuple(a + b for a, b in zip(self._num, other._num)), d1)
        return FieldElement._raw(
            tuple(a * d2 + b * d1 for a, b in zip(self._num, other._num)), d1 * d2
        )

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        obj = FieldElement.__new__(FieldElement)
        obj._num = tuple(-a for a in self._num)
        obj._den = self._den
        obj._hash = None
        obj._float = None
        return obj

    def __sub__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> FieldElement:
        return (-self) + other

    def __mul__(self, other) -> FieldElement:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a = [(i, x) for i, x in enumerate(self._num) if x]
        b = [(j, y) for j, y in enumerate(other._num) if y]
        out = [0] * DIM
        for i, x in a:
            row = _PRODUCT[i]
            for j, y in b:
                k, f = row[j]
                out[k] += f * x * y
        return FieldElement._raw(tuple(out), self._den * other._den)

    __rmul__ = __mul__

    def square(self) -> FieldElement:
        return self * self

    def div_rational(self, q: Rational) -> FieldElement:
        """Divide by a nonzero rational."""
        q = Fraction(q)
        if q == 0:
            raise ZeroDivisionError("division of a field element by zero")
        return FieldElement(
            (a * q.denominator for a in self._num), self._den * q.numerator
        )

    def __truediv__(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if not other.is_rational():
                raise TypeError("division is only supported by rational values")
            other = other.rational_part()
        if isinstance(other, (int, Fraction)):
            return self.div_rational(other)
        return NotImplemented

    # comparison -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = FieldElement.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def sort_key(self) -> tuple:
        """Total order on canonical coefficient vectors (not the real order)."""
        return (self._num, self._den)

    def sign(self) -> int:
        return fe_sign(self)

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    # approximation --------------------------------------------------------

    def __float__(self) -> float:
        if self._float is None:
            self._float = math.fsum(
                n * s for n, s in zip(self._num, _SQRT_FLOAT) if n
            ) / self._den
        return self._float

    def approx(self, eps: Rational) -> RationalInterval:
        return fe_approx(self, eps)

    # serialisation --------------------------------------------------------

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> FieldElement:
        if not isinstance(data, list) or len(data) != DIM:
            raise ValueError(f"field element must be a list of {DIM} 'num/den' strings")
        return cls.from_coeffs(Fraction(s) for s in data)

    def __repr__(self) -> str:
        return f"FieldElement({self})"

    def __str__(self) -> str:
        terms = []
        for c, n in zip(self.coeffs, BASIS_RADICANDS):
            if c == 0:
                continue
            terms.append(str(c) if n == 1 else f"{c}*√{n}")
        return " + ".join(terms) if terms else "0"


ZERO = FieldElement.from_rational(0)
ONE = FieldElement.from_rational(1)


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0


def _sqrt_bounds(n: int, bits: int) -> tuple[int, int]:
    # floor and ceiling of √n·2^bits
    r = math.isqrt(n << (2 * bits))
    return r, r if r * r == n << (2 * bits) else r + 1


def _scaled_bounds(a: FieldElement, bits: int) -> tuple[int, int]:
    """Integer bounds L ≤ a·den·2^bits ≤ U."""
    lo = hi = 0
    for n, rad in zip(a._num, BASIS_RADICANDS):
        if not n:
            continue
        r_lo, r_hi = _sqrt_bounds(rad, bits)
        if n > 0:
            lo += n * r_lo
            hi += n * r_hi
        else:
            lo += n * r_hi
            hi += n * r_lo
    return lo, hi


def fe_from_rational(q: Rational) -> FieldElement:
    return FieldElement.from_rational(q)


def fe_radical(n: int) -> FieldElement:
    return FieldElement.radical(n)


def fe_arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    if op == "neg":
        if b is not None:
            raise ValueError("neg is unary")
        return -a
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def fe_div_by_rational(a: FieldElement, q: Rational) -> FieldElement:
    return a.div_rational(q)


def fe_approx(a: FieldElement, eps: Rational) -> RationalInterval:
    """Rational interval of width ≤ eps containing ``a``.

    Intervals for smaller ``eps`` are nested inside those for larger ones,
    because each radical is bounded by floor/ceiling at a dyadic precision
    chosen monotonically from ``eps``.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    # width ≤ Σ|n_i| / (den·2^bits)
    total = sum(abs(n) for n in a._num[1:])
    bits = 0
    if total:
        need = Fraction(total, a._den) / eps
        bits = max(0, math.ceil(math.log2(need)) + 1)
        while Fraction(total, a._den << bits) > eps:
            bits += 1
    lo, hi = _scaled_bounds(a, bits)
    scale = a._den << bits
    return RationalInterval(Fraction(lo, scale), Fraction(hi, scale))


def fe_sign(a: FieldElement) -> int:
    """Sign of the real value; exact zero test, then adaptive refinement."""
    if a.is_zero():
        return 0
    if a.is_rational():
        return 1 if a._num[0] > 0 else -1
    # nonzero, so refinement terminates
    bits = 60
    while True:
        lo, hi = _scaled_bounds(a, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
