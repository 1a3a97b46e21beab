"""Exact arithmetic in the biquadratic field Q(i, sqrt(d)).

An element is stored as four integer numerators over one positive common
denominator::

    (a + b*r + c*i + e*i*r) / den,     r = sqrt(d), i*i = -1

kept in lowest terms after every operation so that equality is plain
tuple comparison.  For ``d == 1`` the ``r`` components are folded into the
rational and ``i`` components.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Union

__all__ = [
    "FieldElement",
    "FieldMismatchError",
    "ParseError",
    "is_squarefree",
    "parse_element",
    "render",
]


class FieldMismatchError(ValueError):
    """Raised when elements of Q(i, sqrt(d)) with different d are combined."""


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


_Scalar = Union[int, Fraction]


def _lowest(a: int, b: int, c: int, e: int, den: int):
    if den < 0:
        a, b, c, e, den = -a, -b, -c, -e, -den
    g = gcd(gcd(gcd(a, b), gcd(c, e)), den)
    if g > 1:
        return a // g, b // g, c // g, e // g, den // g
    return a, b, c, e, den


class FieldElement:
    __slots__ = ("_a", "_b", "_c", "_e", "_den", "d")

    def __init__(self, a: _Scalar = 0, b: _Scalar = 0, c: _Scalar = 0,
                 e: _Scalar = 0, d: int = 1):
        if not is_squarefree(d):
            raise ValueError(f"d must be a square-free positive integer, got {d}")
        fa, fb, fc, fe = (Fraction(t) for t in (a, b, c, e))
        den = 1
        for f in (fa, fb, fc, fe):
            den = den * f.denominator // gcd(den, f.denominator)
        self._set(fa.numerator * (den // fa.denominator),
                  fb.numerator * (den // fb.denominator),
                  fc.numerator * (den // fc.denominator),
                  fe.numerator * (den // fe.denominator),
                  den, d)

    def _set(self, a, b, c, e, den, d):
        if d == 1:
            a, b, c, e = a + b, 0, c + e, 0
        a, b, c, e, den = _lowest(a, b, c, e, den)
        self._a, self._b, self._c, self._e, self._den, self.d = a, b, c, e, den, d
        return self

    @classmethod
    def _raw(cls, a, b, c, e, den, d) -> FieldElement:
        obj = cls.__new__(cls)
        return obj._set(a, b, c, e, den, d)

    @classmethod
    def zero(cls, d: int = 1) -> FieldElement:
        return cls._raw(0, 0, 0, 0, 1, d)

    @classmethod
    def one(cls, d: int = 1) -> FieldElement:
        return cls._raw(1, 0, 0, 0, 1, d)

    @classmethod
    def sqrt_d(cls, d: int) -> FieldElement:
        return cls._raw(0, 1, 0, 0, 1, d)

    @classmethod
    def imag_unit(cls, d: int = 1) -> FieldElement:
        return cls._raw(0, 0, 1, 0, 1, d)

    # coefficient access
    @property
    def a(self) -> Fraction:
        return Fraction(self._a, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._b, self._den)

    @property
    def c(self) -> Fraction:
        return Fraction(self._c, self._den)

    @property
    def e(self) -> Fraction:
        return Fraction(self._e, self._den)

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.a, self.b, self.c, self.e

    # coercion
    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.d != self.d:
                raise FieldMismatchError(
                    f"cannot combine elements of Q(i, sqrt({self.d})) "
                    f"and Q(i, sqrt({other.d}))")
            return other
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return FieldElement._raw(f.numerator, 0, 0, 0, f.denominator, self.d)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._den == o._den:
            return FieldElement._raw(self._a + o._a, self._b + o._b, self._c + o._c,
                                     self._e + o._e, self._den, self.d)
        p, q = self._den, o._den
        return FieldElement._raw(self._a * q + o._a * p, self._b * q + o._b * p,
                                 self._c * q + o._c * p, self._e * q + o._e * p,
                                 p * q, self.d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(-self._a, -self._b, -self._c, -self._e, self._den, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.d
        a, b, c, e = self._a, self._b, self._c, self._e
        a2, b2, c2, e2 = o._a, o._b, o._c, o._e
        if not (b or c or e):
            return FieldElement._raw(a * a2, a * b2, a * c2, a * e2, self._den * o._den, d)
        if not (b2 or c2 or e2):
            return FieldElement._raw(a2 * a, a2 * b, a2 * c, a2 * e, self._den * o._den, d)
        return FieldElement._raw(
            a * a2 + d * b * b2 - c * c2 - d * e * e2,
            a * b2 + b * a2 - c * e2 - e * c2,
            a * c2 + c * a2 + d * (b * e2 + e * b2),
            a * e2 + e * a2 + b * c2 + c * b2,
            self._den * o._den, d)

    __rmul__ = __mul__

    def inv(self) -> FieldElement:
        """Multiplicative inverse through the norm down to Q."""
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt(d))")
        d = self.d
        den = self._den
        a, b, c, e = self._a, self._b, self._c, self._e
        # x = al + i*be with al, be in Q(r); x * conj_i(x) = al^2 + be^2 = p + q*r
        p = a * a + d * b * b + c * c + d * e * e
        q = 2 * (a * b + c * e)
        n = p * p - d * q * q
        # 1/x = conj_i(x) * (p - q*r) * den / n
        xb = (a, b, -c, -e)
        num = (
            xb[0] * p - d * xb[1] * q,
            xb[1] * p - xb[0] * q,
            xb[2] * p - d * xb[3] * q,
            xb[3] * p - xb[2] * q,
        )
        return FieldElement._raw(num[0] * den, num[1] * den, num[2] * den,
                                 num[3] * den, n, d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = FieldElement.one(self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj_i(self) -> FieldElement:
        return FieldElement._raw(self._a, self._b, -self._c, -self._e, self._den, self.d)

    def conj_sqrt(self) -> FieldElement:
        return FieldElement._raw(self._a, -self._b, self._c, -self._e, self._den, self.d)

    def norm(self) -> Fraction:
        """Product of the four Galois conjugates; a rational number."""
        x = self * self.conj_i()
        n = x * x.conj_sqrt()
        assert not (n._b or n._c or n._e)
        return n.a

    def is_real(self) -> bool:
        return self._c == 0 and self._e == 0

    def is_rational(self) -> bool:
        return self._b == 0 and self._c == 0 and self._e == 0

    def real_part(self) -> FieldElement:
        return FieldElement._raw(self._a, self._b, 0, 0, self._den, self.d)

    def imag_part(self) -> FieldElement:
        return FieldElement._raw(self._c, self._e, 0, 0, self._den, self.d)

    def to_float(self) -> complex:
        r = self.d ** 0.5
        re_ = (self._a + self._b * r) / self._den
        im_ = (self._c + self._e * r) / self._den
        return complex(re_, im_)

    # comparison and hashing
    def _key(self):
        return self._a, self._b, self._c, self._e, self._den, self.d

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self._key() == other._key()
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return (self.is_rational() and self._a == f.numerator
                    and self._den == f.denominator)
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __bool__(self):
        return bool(self._a or self._b or self._c or self._e)

    def __repr__(self):
        return f"FieldElement({render(self)!r}, d={self.d})"

    def __str__(self):
        return render(self)


# ---------------------------------------------------------------------------
# string grammar
#   element := term (('+'|'-') term)*
#   term    := coeff ('*' symbol)? | symbol
#   symbol  := 'i' | 'r' | 'i*r'
#   coeff   := int | int '/' posint
# ---------------------------------------------------------------------------

_SYMBOLS = ("", "r", "i", "i*r")


def render(x: FieldElement) -> str:
    parts = []
    for sym, coef in zip(_SYMBOLS, x.coefficients()):
        if coef == 0:
            continue
        neg = coef < 0
        mag = -coef if neg else coef
        if sym and mag == 1:
            body = sym if (parts or not neg) else "1*" + sym
        else:
            body = str(mag) if not sym else f"{mag}*{sym}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)(?:\s*/\s*(\d+))?(?:\s*\*\s*(i\s*\*\s*r|i|r))?|(i\s*\*\s*r|i|r))\s*")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def parse_element(text: str, d: int) -> FieldElement:
    """Parse the field-element grammar; ``r`` denotes sqrt(d)."""
    coeffs = [Fraction(0)] * 4
    pos = 0
    n = len(text)
    first = True
    if not text.strip():
        raise ParseError("empty field element", 0)
    while pos < n:
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        sign, num, den, sym1, sym2 = m.groups()
        if num is None and sym2 is None:
            raise ParseError("expected a term", m.start())
        if sign is None and not first:
            raise ParseError("expected '+' or '-'", m.start())
        if num is not None:
            if den is not None and int(den) == 0:
                raise ParseError("zero denominator", m.start(3))
            value = Fraction(int(num), int(den) if den is not None else 1)
            sym = sym1
        else:
            value = Fraction(1)
            sym = sym2
        if sign == "-":
            value = -value
        sym = re.sub(r"\s+", "", sym) if sym else ""
        coeffs[_SYMBOLS.index(sym)] += value
        pos = m.end()
        first = False
    return FieldElement(*coeffs, d=d)
