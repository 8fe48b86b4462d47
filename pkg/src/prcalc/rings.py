"""Coefficient rings: polynomials on R^n and Fourier polynomials on T^n.

Both rings are stored as sparse maps ``exponent tuple -> GaussRat``.  On the
Euclidean chart the tuple holds the powers of ``x1..xn``; on the torus it holds
the integer frequencies ``k`` of ``exp(i k.theta)``.  All arithmetic is exact.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ChartMismatch, FrameIndexError
from .scalars import ONE, ZERO, GaussRat, I, as_gauss

__all__ = ["ChartSpec", "FunElem", "join_terms", "render_coeff"]

EUCLID = "euclid"
TORUS = "torus"


@dataclass(frozen=True)
class ChartSpec:
    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in (EUCLID, TORUS):
            raise ValueError(f"unknown chart kind {self.kind!r}")
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"chart dimension must be a positive integer, got {self.dim!r}")

    @classmethod
    def euclid(cls, n: int) -> "ChartSpec":
        return cls(EUCLID, n)

    @classmethod
    def torus(cls, n: int) -> "ChartSpec":
        return cls(TORUS, n)

    @classmethod
    def parse(cls, text: str) -> "ChartSpec":
        kind, _, dim = text.strip().partition(":")
        if kind == "circle" and not dim:
            return cls(TORUS, 1)
        try:
            return cls(kind, int(dim))
        except ValueError as exc:
            raise ValueError(f"bad chart {text!r}; expected euclid:<n> or torus:<n>") from exc

    @property
    def is_torus(self) -> bool:
        return self.kind == TORUS

    def __str__(self):
        return f"{self.kind}:{self.dim}"


def render_coeff(c: GaussRat) -> str:
    s = str(c)
    return f"({s})" if c.re and c.im else s


def join_terms(pieces: Iterable[tuple[GaussRat, str]]) -> str:
    """Render ``sum c*m`` with sign folding; ``m == ""`` means the unit monomial."""
    out = []
    for c, mono in pieces:
        negative = (not c.im and c.re < 0) or (not c.re and c.im < 0)
        mag = -c if negative else c
        if not mono:
            body = render_coeff(mag)
        elif mag == ONE:
            body = mono
        else:
            body = f"{render_coeff(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out) if out else "0"


class FunElem:
    """Immutable element of the coefficient ring of a chart."""

    __slots__ = ("chart", "terms", "_hash")

    def __init__(self, chart: ChartSpec, terms: Mapping[tuple, object] = None):
        self.chart = chart
        clean = {}
        if terms:
            for k, c in terms.items():
                c = as_gauss(c)
                if c:
                    if len(k) != chart.dim:
                        raise ValueError(f"exponent {k} does not match {chart}")
                    clean[tuple(k)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, chart, terms):
        obj = cls.__new__(cls)
        obj.chart = chart
        obj.terms = terms
        obj._hash = None
        return obj

    # constructors -----------------------------------------------------

    @classmethod
    def zero(cls, chart):
        return cls._raw(chart, {})

    @classmethod
    def const(cls, chart, c=1):
        return cls(chart, {(0,) * chart.dim: c})

    @classmethod
    def var(cls, chart, i: int, power: int = 1):
        """``x_i^power`` on the Euclidean chart (1-based index)."""
        if chart.is_torus:
            raise ValueError("coordinate functions x_i exist only on euclid charts")
        _check_index(chart, i)
        exp = [0] * chart.dim
        exp[i - 1] = power
        return cls(chart, {tuple(exp): 1})

    @classmethod
    def fourier(cls, chart, freq, c=1):
        """``c * exp(i k.theta)`` on the torus; ``freq`` is an int (dim 1) or a tuple."""
        if not chart.is_torus:
            raise ValueError("Fourier modes exist only on torus charts")
        if isinstance(freq, int):
            freq = (freq,) + (0,) * (chart.dim - 1) if chart.dim > 1 else (freq,)
        return cls(chart, {tuple(freq): c})

    @classmethod
    def cos(cls, chart, j: int = 1, mult: int = 1):
        _check_index(chart, j)
        k = _unit(chart, j, mult)
        half = Fraction(1, 2)
        return cls(chart, {k: half}) + cls(chart, {tuple(-x for x in k): half})

    @classmethod
    def sin(cls, chart, j: int = 1, mult: int = 1):
        _check_index(chart, j)
        k = _unit(chart, j, mult)
        # (e^{ik} - e^{-ik}) / (2i) = -i/2 e^{ik} + i/2 e^{-ik}
        return cls(chart, {k: GaussRat(0, Fraction(-1, 2))}) + cls(
            chart, {tuple(-x for x in k): GaussRat(0, Fraction(1, 2))}
        )

    # ring operations --------------------------------------------------

    def _same(self, other):
        if self.chart != other.chart:
            raise ChartMismatch(self.chart, other.chart)

    def _lift(self, other):
        if isinstance(other, FunElem):
            self._same(other)
            return other
        return FunElem.const(self.chart, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FunElem._raw(self.chart, out)

    __radd__ = __add__

    def __neg__(self):
        return FunElem._raw(self.chart, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "FunElem":
        c = as_gauss(c)
        if not c:
            return FunElem.zero(self.chart)
        return FunElem._raw(self.chart, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FunElem):
            return self.scale(other)
        self._same(other)
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                s = out.get(k)
                out[k] = ca * cb if s is None else s + ca * cb
        return FunElem._raw(self.chart, {k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("only natural powers are defined")
        out = FunElem.const(self.chart)
        for _ in range(n):
            out = out * self
        return out

    def derive(self, i: int) -> "FunElem":
        """Partial derivative along the i-th frame field (1-based)."""
        _check_index(self.chart, i)
        j = i - 1
        out = {}
        if self.chart.is_torus:
            for k, c in self.terms.items():
                if k[j]:
                    out[k] = c * GaussRat(0, k[j])
        else:
            for k, c in self.terms.items():
                if k[j]:
                    e = list(k)
                    e[j] -= 1
                    out[tuple(e)] = c * k[j]
        return FunElem._raw(self.chart, out)

    def conj(self) -> "FunElem":
        if self.chart.is_torus:
            return FunElem._raw(
                self.chart, {tuple(-x for x in k): c.conjugate() for k, c in self.terms.items()}
            )
        return FunElem._raw(self.chart, {k: c.conjugate() for k, c in self.terms.items()})

    # predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_real(self) -> bool:
        return self == self.conj()

    def is_constant(self) -> bool:
        return all(not any(k) for k in self.terms)

    def constant_term(self) -> GaussRat:
        return self.terms.get((0,) * self.chart.dim, ZERO)

    def degree(self) -> int:
        """Total polynomial degree (euclid) or max |frequency| component (torus); -1 for zero."""
        if not self.terms:
            return -1
        if self.chart.is_torus:
            return max(max(abs(x) for x in k) for k in self.terms)
        return max(sum(k) for k in self.terms)

    def __eq__(self, other):
        if isinstance(other, FunElem):
            return self.chart == other.chart and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussRat)):
            return self.terms == FunElem.const(self.chart, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, frozenset(self.terms.items())))
        return self._hash

    # evaluation oracle -------------------------------------------------

    def evaluate(self, point) -> complex:
        """Float evaluation at a point (x values or angles); used only by test oracles."""
        total = 0j
        for k, c in self.terms.items():
            if self.chart.is_torus:
                phase = sum(kk * t for kk, t in zip(k, point))
                total += complex(c) * cmath.exp(1j * phase)
            else:
                m = 1.0
                for e, x in zip(k, point):
                    m *= x**e
                total += complex(c) * m
        return total

    # rendering ----------------------------------------------------------

    def sorted_keys(self):
        if self.chart.is_torus:
            return sorted(self.terms, reverse=True)
        return sorted(self.terms, key=lambda k: (sum(k), k), reverse=True)

    def monomial_str(self, k) -> str:
        if self.chart.is_torus:
            if not any(k):
                return ""
            return f"e({','.join(str(x) for x in k)})"
        parts = []
        for idx, e in enumerate(k, start=1):
            if e == 1:
                parts.append(f"x{idx}")
            elif e > 1:
                parts.append(f"x{idx}^{e}")
        return "*".join(parts)

    def __str__(self):
        return join_terms((self.terms[k], self.monomial_str(k)) for k in self.sorted_keys())

    def __repr__(self):
        return f"FunElem({self.chart}, {self})"

    def is_single_term(self) -> bool:
        return len(self.terms) <= 1


def _check_index(chart, i):
    if not isinstance(i, int) or not 1 <= i <= chart.dim:
        raise FrameIndexError(f"frame index {i} out of range 1..{chart.dim}")


def _unit(chart, j, mult):
    k = [0] * chart.dim
    k[j - 1] = mult
    return tuple(k)


def imag_unit(chart) -> FunElem:
    return FunElem.const(chart, I)
