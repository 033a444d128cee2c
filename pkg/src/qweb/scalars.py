"""Exact arithmetic in Q(i, sqrt(2)), the coefficient field of the calculus.

Every number is stored as a + b*i + c*sqrt(2) + d*i*sqrt(2) with Fraction
components, so equality is exact and componentwise.  This is the smallest
field containing sqrt(-1) (the odd involution) and 1/sqrt(2) (the odd
Jucys-Murphy normalization).
"""

from __future__ import annotations

import re
from fractions import Fraction

_F0 = Fraction(0)


class ScalarParseError(ValueError):
    """Raised on malformed scalar text; carries the offending position."""

    def __init__(self, text: str, pos: int, reason: str):
        super().__init__(f"{reason} at position {pos} in {text!r}")
        self.pos = pos


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")


class Scalar:
    """Element a + b*i + c*r2 + d*i*r2 of Q(i, sqrt(2)), with r2 = sqrt(2).

    Values are immutable by convention; all operations return new objects,
    so scalars can be shared freely across threads.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=_F0, b=_F0, c=_F0, d=_F0):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return (
            self.a == other.a and self.b == other.b
            and self.c == other.c and self.d == other.d
        )

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.c, self.d))

    @staticmethod
    def of(x) -> "Scalar":
        """Coerce an int, Fraction or Scalar to a Scalar."""
        if isinstance(x, Scalar):
            return x
        return Scalar(_frac(x))

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.d)

    def is_zero(self) -> bool:
        return not self

    def __add__(self, other) -> "Scalar":
        o = other if isinstance(other, Scalar) else Scalar.of(other)
        if not (self.b or self.c or self.d or o.b or o.c or o.d):
            return Scalar(self.a + o.a)
        return Scalar(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        if not (self.b or self.c or self.d):
            return Scalar(-self.a)
        return Scalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other) -> "Scalar":
        return self + (-Scalar.of(other))

    def __rsub__(self, other) -> "Scalar":
        return Scalar.of(other) + (-self)

    def __mul__(self, other) -> "Scalar":
        o = other if isinstance(other, Scalar) else Scalar.of(other)
        if not (self.b or self.c or self.d or o.b or o.c or o.d):
            return Scalar(self.a * o.a)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # multiplication table: i^2 = -1, r2^2 = 2, (i*r2)^2 = -2
        return Scalar(
            a1 * a2 - b1 * b2 + 2 * (c1 * c2 - d1 * d2),
            a1 * b2 + b1 * a2 + 2 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2,
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        """Multiplicative inverse, rationalizing first over sqrt(2), then over i."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        # x = u + v*r2 with u = a + b i, v = c + d i; x * (u - v*r2) = u^2 - 2 v^2
        conj_r2 = Scalar(self.a, self.b, -self.c, -self.d)
        w = self * conj_r2  # lies in Q(i): w.c == w.d == 0
        p, q = w.a, w.b
        norm = p * p + q * q
        conj_i = Scalar(p / norm, -q / norm)
        return conj_r2 * conj_i

    def __truediv__(self, other) -> "Scalar":
        return self * Scalar.of(other).inv()

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.of(other) * self.inv()

    def conjugate_i(self) -> "Scalar":
        return Scalar(self.a, -self.b, self.c, -self.d)

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"


ZERO = Scalar()
ONE = Scalar(Fraction(1))
I = Scalar(Fraction(0), Fraction(1))
SQRT2 = Scalar(Fraction(0), Fraction(0), Fraction(1))
ISQRT2 = Scalar(Fraction(0), Fraction(0), Fraction(1, 2))  # 1/sqrt(2) = sqrt(2)/2


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    """Canonical text: `rat` terms joined by ' + ' with units i, r2, i*r2."""
    terms = []
    if x.a:
        terms.append(_fmt_rat(x.a))
    for comp, unit in ((x.b, "i"), (x.c, "r2"), (x.d, "i*r2")):
        if comp:
            terms.append(f"{_fmt_rat(comp)}*{unit}")
    return " + ".join(terms) if terms else "0"


_RAT_RE = re.compile(r"[+-]?\d+(?:/\d+)?")
_UNITS = {"": 0, "i": 1, "r2": 2, "i*r2": 3}


def parse_scalar(text: str) -> Scalar:
    """Parse the grammar `rat ( '+' rat '*' unit )*` (leading bare rat optional)."""
    comps = [Fraction(0)] * 4
    stripped = text.replace(" ", "")
    if not stripped:
        raise ScalarParseError(text, 0, "empty scalar")
    pos = 0
    for piece in stripped.split("+"):
        if not piece:
            raise ScalarParseError(text, pos, "empty term")
        m = _RAT_RE.match(piece)
        if not m:
            raise ScalarParseError(text, pos, "expected rational")
        rat = Fraction(m.group(0))
        rest = piece[m.end():]
        if rest.startswith("*"):
            rest = rest[1:]
        if rest not in _UNITS:
            raise ScalarParseError(text, pos + m.end(), f"unknown unit {rest!r}")
        comps[_UNITS[rest]] += rat
        pos += len(piece) + 1
    return Scalar(*comps)
