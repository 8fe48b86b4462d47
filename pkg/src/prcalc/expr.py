"""Free Poisson expression trees and their reduction to normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from .errors import ChartMismatch, MalformedExpr
from .lr import VecElem
from .normal_form import NormalForm, image_jordan, image_vec, involution, poisson_bracket
from .rings import ChartSpec, FunElem
from .scalars import GaussRat

__all__ = [
    "PExpr",
    "ScalarLeaf",
    "FunLeaf",
    "VecLeaf",
    "ZLeaf",
    "Sum",
    "Prod",
    "Bracket",
    "Star",
    "JordanLeaf",
    "normalize",
    "expr_chart",
]


@dataclass(frozen=True)
class ScalarLeaf:
    value: GaussRat


@dataclass(frozen=True)
class FunLeaf:
    f: FunElem


@dataclass(frozen=True)
class VecLeaf:
    v: VecElem


@dataclass(frozen=True)
class ZLeaf:
    pass


@dataclass(frozen=True)
class Sum:
    children: Tuple["PExpr", ...]


@dataclass(frozen=True)
class Prod:
    children: Tuple["PExpr", ...]


@dataclass(frozen=True)
class Bracket:
    left: "PExpr"
    right: "PExpr"


@dataclass(frozen=True)
class Star:
    child: "PExpr"


@dataclass(frozen=True)
class JordanLeaf:
    f: FunElem
    v: VecElem


PExpr = Union[ScalarLeaf, FunLeaf, VecLeaf, ZLeaf, Sum, Prod, Bracket, Star, JordanLeaf]


def _leaf_charts(e, acc):
    if isinstance(e, FunLeaf):
        acc.add(e.f.chart)
    elif isinstance(e, VecLeaf):
        acc.add(e.v.chart)
    elif isinstance(e, JordanLeaf):
        acc.add(e.f.chart)
        acc.add(e.v.chart)
    elif isinstance(e, (Sum, Prod)):
        for c in e.children:
            _leaf_charts(c, acc)
    elif isinstance(e, Bracket):
        _leaf_charts(e.left, acc)
        _leaf_charts(e.right, acc)
    elif isinstance(e, Star):
        _leaf_charts(e.child, acc)
    elif not isinstance(e, (ScalarLeaf, ZLeaf)):
        raise MalformedExpr(f"not an expression node: {e!r}")
    return acc


def expr_chart(e, default: ChartSpec = None) -> ChartSpec:
    charts = _leaf_charts(e, set())
    if len(charts) > 1:
        a, b = sorted(charts, key=str)[:2]
        raise ChartMismatch(a, b)
    if charts:
        return charts.pop()
    if default is None:
        raise MalformedExpr("expression has no chart-carrying leaf; pass a chart")
    return default


def normalize(e, chart: ChartSpec = None) -> NormalForm:
    """Reduce an expression tree to its PBW normal form.

    Brackets are eliminated bottom-up by bi-Leibniz expansion down to
    generator brackets; vector fields and Rinehart products embed through the
    symmetric (Jordan) image; products are normal-ordered with
    ``p_i g -> g p_i + z d_i g``.
    """
    chart = expr_chart(e, chart)
    return _norm(e, chart)


def _norm(e, chart) -> NormalForm:
    if isinstance(e, ScalarLeaf):
        return NormalForm.scalar(chart, e.value)
    if isinstance(e, FunLeaf):
        return NormalForm.from_fun(e.f)
    if isinstance(e, ZLeaf):
        return NormalForm.z(chart)
    if isinstance(e, VecLeaf):
        return image_vec(e.v)
    if isinstance(e, JordanLeaf):
        return image_jordan(e.f, e.v)
    if isinstance(e, Sum):
        out = NormalForm.zero(chart)
        for c in e.children:
            out = out + _norm(c, chart)
        return out
    if isinstance(e, Prod):
        if not e.children:
            raise MalformedExpr("empty product")
        out = _norm(e.children[0], chart)
        for c in e.children[1:]:
            out = out * _norm(c, chart)
        return out
    if isinstance(e, Bracket):
        return poisson_bracket(_norm(e.left, chart), _norm(e.right, chart))
    if isinstance(e, Star):
        return involution(_norm(e.child, chart))
    raise MalformedExpr(f"not an expression node: {e!r}")


def neg(e):
    return Prod((ScalarLeaf(GaussRat(-1)), e))


def sub(a, b):
    return Sum((a, neg(b)))


def comm(a, b):
    """Unreduced commutator a*b - b*a as a tree."""
    return sub(Prod((a, b)), Prod((b, a)))
