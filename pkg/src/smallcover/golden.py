"""Exact arithmetic in the golden field Q(phi), where phi**2 = phi + 1."""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class GoldenNumber:
    """a + b*phi with rational a, b and phi = (1 + sqrt(5)) / 2.

    Components may be ints or Fractions; all operations are exact, and the
    sign of a value is decided with integer arithmetic only.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a
        self.b = b

    def __repr__(self):
        return f"GoldenNumber({self.a!r}, {self.b!r})"

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        # int and Fraction hash consistently for equal values.
        return hash((self.a, self.b))

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GoldenNumber(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenNumber(-self.a, -self.b)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GoldenNumber(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        bd = self.b * other.b
        return GoldenNumber(self.a * other.a + bd, self.a * other.b + self.b * other.a + bd)

    __rmul__ = __mul__

    def sign(self):
        """Return -1, 0 or 1 according to the sign of a + b*phi."""
        # a + b(1 + sqrt 5)/2 = (p + q sqrt 5)/2 with p = 2a + b, q = b.
        p = 2 * self.a + self.b
        q = self.b
        if p == 0 and q == 0:
            return 0
        if p >= 0 and q >= 0:
            return 1
        if p <= 0 and q <= 0:
            return -1
        # p and q have strictly opposite signs; compare p^2 with 5 q^2.
        if p > 0:
            return 1 if p * p > 5 * q * q else -1
        return 1 if p * p < 5 * q * q else -1

    def __lt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def key(self):
        """Sort key with a total order compatible across int/Fraction components."""
        return (Fraction(self.a), Fraction(self.b))


PHI = GoldenNumber(0, 1)
INV_PHI = GoldenNumber(-1, 1)      # 1/phi = phi - 1
PHI_SQ = GoldenNumber(1, 1)        # phi^2 = phi + 1
INV_PHI_SQ = GoldenNumber(2, -1)   # 1/phi^2 = 2 - phi
SQRT5 = GoldenNumber(-1, 2)        # sqrt 5 = 2 phi - 1


def _coerce(x):
    if isinstance(x, GoldenNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return GoldenNumber(x, 0)
    return NotImplemented
