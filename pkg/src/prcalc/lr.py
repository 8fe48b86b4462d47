"""Vector fields in the global coordinate frame and the Lie-Rinehart operations."""

from __future__ import annotations

from typing import Sequence

from .errors import ChartMismatch
from .rings import ChartSpec, FunElem, _check_index, join_terms
from .scalars import ONE

__all__ = ["VecElem", "vec_apply", "vec_bracket", "rinehart"]


class VecElem:
    """``sum_i coeffs[i] * d_{i+1}`` with FunElem coefficients."""

    __slots__ = ("chart", "coeffs")

    def __init__(self, chart: ChartSpec, coeffs: Sequence[FunElem]):
        if len(coeffs) != chart.dim:
            raise ValueError(f"need {chart.dim} coefficients, got {len(coeffs)}")
        for c in coeffs:
            if c.chart != chart:
                raise ChartMismatch(chart, c.chart)
        self.chart = chart
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, chart):
        return cls(chart, [FunElem.zero(chart)] * chart.dim)

    @classmethod
    def frame(cls, chart, i: int) -> "VecElem":
        """The coordinate field d_i."""
        _check_index(chart, i)
        cs = [FunElem.zero(chart)] * chart.dim
        cs = list(cs)
        cs[i - 1] = FunElem.const(chart)
        return cls(chart, cs)

    def _same(self, other):
        if self.chart != other.chart:
            raise ChartMismatch(self.chart, other.chart)

    def __add__(self, other):
        self._same(other)
        return VecElem(self.chart, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same(other)
        return VecElem(self.chart, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return VecElem(self.chart, [-a for a in self.coeffs])

    def scale(self, c):
        return VecElem(self.chart, [a.scale(c) for a in self.coeffs])

    def conj(self):
        return VecElem(self.chart, [a.conj() for a in self.coeffs])

    def divergence(self) -> FunElem:
        out = FunElem.zero(self.chart)
        for i, c in enumerate(self.coeffs, start=1):
            out = out + c.derive(i)
        return out

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def is_real(self):
        return all(c.is_real() for c in self.coeffs)

    def degree(self):
        return max(c.degree() for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, VecElem):
            return NotImplemented
        return self.chart == other.chart and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.chart, self.coeffs))

    def field_name(self, i):
        return f"dt{i}" if self.chart.is_torus else f"d{i}"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs, start=1):
            if c.is_zero():
                continue
            if len(c.terms) == 1:
                (k, v), = c.terms.items()
                mono = c.monomial_str(k)
                parts.append((v, f"{mono}*{self.field_name(i)}" if mono else self.field_name(i)))
            else:
                parts.append((ONE, f"({c})*{self.field_name(i)}"))
        return join_terms(parts)

    def __repr__(self):
        return f"VecElem({self.chart}, {self})"


def vec_apply(v: VecElem, f: FunElem) -> FunElem:
    """v(f) = sum_i v_i * d_i f."""
    if v.chart != f.chart:
        raise ChartMismatch(v.chart, f.chart)
    out = FunElem.zero(f.chart)
    for i, c in enumerate(v.coeffs, start=1):
        if c:
            out = out + c * f.derive(i)
    return out


def vec_bracket(v: VecElem, w: VecElem) -> VecElem:
    """Lie bracket; the d_j coefficient is v(w_j) - w(v_j)."""
    v._same(w)
    return VecElem(v.chart, [vec_apply(v, wj) - vec_apply(w, vj) for vj, wj in zip(v.coeffs, w.coeffs)])


def rinehart(f: FunElem, v: VecElem) -> VecElem:
    """The Rinehart product f o v, i.e. pointwise scaling of the coefficients."""
    if f.chart != v.chart:
        raise ChartMismatch(f.chart, v.chart)
    return VecElem(v.chart, [f * c for c in v.coeffs])
