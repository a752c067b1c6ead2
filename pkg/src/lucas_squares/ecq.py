"""Chord-tangent arithmetic on long Weierstrass cubics.

The group law is written once and works over any exact field whose elements
support +, -, *, / and comparison with 0: Fractions for curves over Q, or
number-field elements from lucas_squares.numfield.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional


@dataclass(frozen=True)
class RationalPoint:
    """Affine point (x, y), or the point at infinity when x is None."""

    x: Optional[Any] = None
    y: Optional[Any] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = RationalPoint()


def _as_field(v):
    return Fraction(v) if isinstance(v, int) else v


@dataclass(frozen=True)
class CurveQ:
    """Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6."""

    a1: Any = 0
    a2: Any = 0
    a3: Any = 0
    a4: Any = 0
    a6: Any = 0

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, _as_field(getattr(self, name)))
        if self.discriminant() == 0:
            raise ValueError(f"singular curve {self}")

    def discriminant(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def point(self, x, y) -> RationalPoint:
        pt = RationalPoint(_as_field(x), _as_field(y))
        if not self.on_curve(pt):
            raise ValueError(f"{pt} is not on {self}")
        return pt

    def on_curve(self, pt: RationalPoint) -> bool:
        if pt.is_infinity:
            return True
        x, y = pt.x, pt.y
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x**3 + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def neg(self, p: RationalPoint) -> RationalPoint:
        if p.is_infinity:
            return p
        return RationalPoint(p.x, -p.y - self.a1 * p.x - self.a3)

    def add(self, p: RationalPoint, q: RationalPoint) -> RationalPoint:
        if p.is_infinity:
            return q
        if q.is_infinity:
            return p
        x1, y1, x2, y2 = p.x, p.y, q.x, q.y
        if x1 == x2:
            if y1 + y2 + self.a1 * x2 + self.a3 == 0:
                return INFINITY
            # doubling
            lam = (3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1) / (
                2 * y1 + self.a1 * x1 + self.a3
            )
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + self.a1 * lam - self.a2 - x1 - x2
        y3 = -(lam + self.a1) * x3 - nu - self.a3
        return RationalPoint(x3, y3)

    def scalar_mul(self, k: int, p: RationalPoint) -> RationalPoint:
        if k < 0:
            return self.scalar_mul(-k, self.neg(p))
        result, base = INFINITY, p
        while k:
            if k & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            k >>= 1
        return result

    def multiples(self, p: RationalPoint, count: int):
        """Yield (k, k*p) for k = 1..count by repeated addition."""
        acc = INFINITY
        for k in range(1, count + 1):
            acc = self.add(acc, p)
            yield k, acc


def short_cubic(a2, a4, a6) -> CurveQ:
    """y^2 = x^3 + a2 x^2 + a4 x + a6."""
    return CurveQ(0, a2, 0, a4, a6)


def cubic_from_roots(r1, r2, r3) -> CurveQ:
    """y^2 = (x - r1)(x - r2)(x - r3)."""
    return CurveQ(0, -(r1 + r2 + r3), 0, r1 * r2 + r1 * r3 + r2 * r3, -(r1 * r2 * r3))


# y^2 = x^3 + 6x^2 + 5x + 1 with x = -Q/P^2 controls U_7(P, Q) = square
U7_CURVE = short_cubic(6, 5, 1)
U7_GENERATOR = U7_CURVE.point(-1, 1)
