"""Exact Gaussian rationals ``re + im*i`` with ``re, im`` in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["GaussRat", "I", "ONE", "ZERO", "as_gauss", "format_fraction"]


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GaussRat:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def parse(cls, text: str) -> "GaussRat":
        """Inverse of ``str``: accepts ``p/q``, ``p/q*i``, ``a + b*i`` and ``a - b*i``."""
        s = text.replace(" ", "")
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        if not s.endswith("i"):
            return cls(Fraction(s))
        body = s[:-1].rstrip("*")
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut > 0:
            re_txt, im_txt = body[:cut], body[cut:]
        else:
            re_txt, im_txt = "0", body
        if im_txt in ("", "+"):
            im_txt = "1"
        elif im_txt == "-":
            im_txt = "-1"
        return cls(Fraction(re_txt), Fraction(im_txt))

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        if type(other) is not GaussRat:
            other = as_gauss(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not GaussRat:
            other = as_gauss(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_gauss(other) - self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other):
        if type(other) is not GaussRat:
            other = as_gauss(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRat(a * c)
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if type(other) is not GaussRat:
            other = as_gauss(other)
        den = other.re * other.re + other.im * other.im
        if not den:
            raise ZeroDivisionError("division by zero GaussRat")
        num = self * other.conjugate()
        return GaussRat(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return as_gauss(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (ONE / self) ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # comparison / hashing ---------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if type(other) is GaussRat:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (Rational, int)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if not self.im else hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        if not self.im:
            return format_fraction(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{format_fraction(self.im)}*i"
        if not self.re:
            return im
        sep = " - " if self.im < 0 else " + "
        return f"{format_fraction(self.re)}{sep}{im.lstrip('-')}"


def as_gauss(value) -> GaussRat:
    if type(value) is GaussRat:
        return value
    if isinstance(value, complex):
        raise TypeError("floating complex values are not exact; build a GaussRat instead")
    if isinstance(value, float):
        raise TypeError("floats are not exact; use Fraction or str")
    return GaussRat(Fraction(value))


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)
