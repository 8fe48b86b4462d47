"""PBW normal forms in the model algebra with formal central z.

An element is stored as ``{(alpha, k): f}`` meaning ``sum f(x) * p^alpha * z^k``:
functions leftmost, momenta ``p_i`` (images of the frame fields ``d_i``) in
ascending index order, ``z`` central.  The only non-trivial generator relation
is ``p_i * g = g * p_i + z * d_i(g)``; frame momenta commute with each other.
"""

from __future__ import annotations

from itertools import product as iproduct
from math import comb
from typing import Mapping

from .errors import ChartMismatch, NotDivisible
from .lr import VecElem
from .rings import ChartSpec, FunElem, join_terms
from .scalars import ONE, GaussRat, as_gauss

__all__ = [
    "NormalForm",
    "poisson_bracket",
    "commutator",
    "divide_z",
    "involution",
    "image_vec",
    "image_jordan",
]


class NormalForm:
    __slots__ = ("chart", "terms", "_hash")

    def __init__(self, chart: ChartSpec, terms: Mapping[tuple, FunElem] = None):
        self.chart = chart
        clean = {}
        for key, f in (terms or {}).items():
            alpha, k = key
            if len(alpha) != chart.dim or k < 0 or min(alpha, default=0) < 0:
                raise ValueError(f"bad normal-form key {key} for {chart}")
            if f.chart != chart:
                raise ChartMismatch(chart, f.chart)
            if f:
                clean[(tuple(alpha), k)] = f
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
    def scalar(cls, chart, c=1):
        return cls.from_fun(FunElem.const(chart, c))

    @classmethod
    def from_fun(cls, f: FunElem):
        return cls._raw(f.chart, {((0,) * f.chart.dim, 0): f} if f else {})

    @classmethod
    def z(cls, chart, power: int = 1):
        return cls._raw(chart, {((0,) * chart.dim, power): FunElem.const(chart)})

    @classmethod
    def momentum(cls, chart, i: int, power: int = 1):
        alpha = [0] * chart.dim
        alpha[i - 1] = power
        return cls._raw(chart, {(tuple(alpha), 0): FunElem.const(chart)})

    @classmethod
    def monomial(cls, f: FunElem, alpha, k=0):
        return cls(f.chart, {(tuple(alpha), k): f})

    # linear structure -------------------------------------------------

    def _same(self, other):
        if self.chart != other.chart:
            raise ChartMismatch(self.chart, other.chart)

    def _lift(self, other):
        if isinstance(other, NormalForm):
            self._same(other)
            return other
        if isinstance(other, FunElem):
            self._same(other)
            return NormalForm.from_fun(other)
        return NormalForm.scalar(self.chart, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for key, f in other.terms.items():
            s = out.get(key)
            s = f if s is None else s + f
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return NormalForm._raw(self.chart, out)

    __radd__ = __add__

    def __neg__(self):
        return NormalForm._raw(self.chart, {key: -f for key, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        c = as_gauss(c)
        if not c:
            return NormalForm.zero(self.chart)
        return NormalForm._raw(self.chart, {key: f.scale(c) for key, f in self.terms.items()})

    def times_z(self, power: int = 1):
        return NormalForm._raw(self.chart, {(a, k + power): f for (a, k), f in self.terms.items()})

    # associative product ---------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, (NormalForm, FunElem)):
            return self.scale(other)
        other = self._lift(other)
        out: dict = {}
        derivs: dict = {}
        for (alpha, k), f in self.terms.items():
            for (beta, l), g in other.terms.items():
                # p^alpha g = sum_{gamma <= alpha} C(alpha, gamma) z^|gamma| (d^gamma g) p^(alpha-gamma)
                for gamma in iproduct(*(range(a + 1) for a in alpha)):
                    dg = _partial(g, gamma, derivs)
                    if not dg:
                        continue
                    weight = 1
                    for a, c in zip(alpha, gamma):
                        weight *= comb(a, c)
                    h = f * dg
                    if weight != 1:
                        h = h.scale(weight)
                    key = (tuple(a - c + b for a, c, b in zip(alpha, gamma, beta)), k + l + sum(gamma))
                    s = out.get(key)
                    out[key] = h if s is None else s + h
        return NormalForm._raw(self.chart, {key: f for key, f in out.items() if f})

    def __rmul__(self, other):
        if isinstance(other, FunElem):
            return NormalForm.from_fun(other) * self
        return self.scale(other)

    def __pow__(self, n: int):
        out = NormalForm.scalar(self.chart)
        for _ in range(n):
            out = out * self
        return out

    # gradings & predicates -------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def z_degree(self):
        return max((k for _, k in self.terms), default=-1)

    def min_z_power(self):
        return min((k for _, k in self.terms), default=0)

    def p_degree(self):
        return max((sum(a) for a, _ in self.terms), default=-1)

    def fun_degree(self):
        return max((f.degree() for f in self.terms.values()), default=-1)

    def __eq__(self, other):
        if isinstance(other, NormalForm):
            return self.chart == other.chart and self.terms == other.terms
        if isinstance(other, (int, GaussRat)):
            return self == NormalForm.scalar(self.chart, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, frozenset(self.terms.items())))
        return self._hash

    # rendering ----------------------------------------------------------

    def sorted_keys(self):
        return sorted(self.terms, key=lambda key: (-sum(key[0]), tuple(-a for a in key[0]), key[1]))

    def __str__(self):
        pieces = []
        for key in self.sorted_keys():
            alpha, k = key
            f = self.terms[key]
            tail = []
            for i, a in enumerate(alpha, start=1):
                if a:
                    tail.append(f"p{i}" if a == 1 else f"p{i}^{a}")
            if k:
                tail.append("z" if k == 1 else f"z^{k}")
            if len(f.terms) == 1:
                (fk, c), = f.terms.items()
                mono = "*".join(x for x in [f.monomial_str(fk)] + tail if x)
                pieces.append((c, mono))
            elif tail:
                pieces.append((ONE, "*".join([f"({f})"] + tail)))
            else:
                pieces.append((ONE, str(f)))
        return join_terms(pieces)

    def __repr__(self):
        return f"NormalForm({self.chart}, {self})"


def _partial(g: FunElem, gamma, cache) -> FunElem:
    key = (id(g), gamma)
    hit = cache.get(key)
    if hit is not None:
        return hit[1]
    out = g
    for i, c in enumerate(gamma, start=1):
        for _ in range(c):
            out = out.derive(i)
            if not out:
                break
    cache[key] = (g, out)  # keep g alive so id() stays unique within one product
    return out


# ---------------------------------------------------------------------------
# Lie bracket by bi-Leibniz expansion over generator letters
# ---------------------------------------------------------------------------


def _letters(chart, alpha, f):
    """Word ``f * p_1^a1 * ... * p_n^an`` as a list of letters: FunElem or frame index."""
    word = [f]
    for i, a in enumerate(alpha, start=1):
        word.extend([i] * a)
    return word


def _letter_nf(chart, letter):
    if isinstance(letter, FunElem):
        return NormalForm.from_fun(letter)
    return NormalForm.momentum(chart, letter)


def _letter_bracket(chart, a, b) -> NormalForm:
    """Generator brackets: {f,g} = 0, {p_i,p_j} = 0, {p_i,g} = d_i g, {f,p_j} = -d_j f."""
    if isinstance(a, FunElem):
        if isinstance(b, FunElem):
            return NormalForm.zero(chart)
        return NormalForm.from_fun(-a.derive(b))
    if isinstance(b, FunElem):
        return NormalForm.from_fun(b.derive(a))
    return NormalForm.zero(chart)


def _word_product(chart, letters) -> NormalForm:
    out = NormalForm.scalar(chart)
    for letter in letters:
        out = out * _letter_nf(chart, letter)
    return out


def poisson_bracket(a: NormalForm, b: NormalForm) -> NormalForm:
    """Bilinear extension of the generator brackets, Leibniz in both slots; {z, .} = 0."""
    a._same(b)
    chart = a.chart
    out = NormalForm.zero(chart)
    for (alpha, k), f in a.terms.items():
        wa = _letters(chart, alpha, f)
        for (beta, l), g in b.terms.items():
            wb = _letters(chart, beta, g)
            acc = NormalForm.zero(chart)
            for r, ar in enumerate(wa):
                for s, bs in enumerate(wb):
                    inner = _letter_bracket(chart, ar, bs)
                    if not inner:
                        continue
                    term = _word_product(chart, wa[:r]) * _word_product(chart, wb[:s])
                    term = term * inner * _word_product(chart, wb[s + 1:]) * _word_product(chart, wa[r + 1:])
                    acc = acc + term
            out = out + acc.times_z(k + l)
    return out


def commutator(a: NormalForm, b: NormalForm) -> NormalForm:
    a._same(b)
    return a * b - b * a


def divide_z(a: NormalForm) -> NormalForm:
    for key, f in a.terms.items():
        if key[1] == 0:
            raise NotDivisible(NormalForm._raw(a.chart, {key: f}))
    return NormalForm._raw(a.chart, {(alpha, k - 1): f for (alpha, k), f in a.terms.items()})


def involution(a: NormalForm) -> NormalForm:
    """Antilinear anti-automorphism fixing functions' real parts and momenta, with z* = -z."""
    chart = a.chart
    out = NormalForm.zero(chart)
    for (alpha, k), f in a.terms.items():
        piece = NormalForm.monomial(FunElem.const(chart), alpha) * NormalForm.from_fun(f.conj())
        if k:
            piece = piece.times_z(k)
            if k % 2:
                piece = -piece
        out = out + piece
    return out


# ---------------------------------------------------------------------------
# Embedding of the Lie-Rinehart algebra
# ---------------------------------------------------------------------------


def image_vec(v: VecElem) -> NormalForm:
    """Symmetric embedding: sum f_i o d_i  ->  sum f_i p_i + (z/2) d_i f_i."""
    chart = v.chart
    terms = {}
    for i, f in enumerate(v.coeffs, start=1):
        if f:
            alpha = [0] * chart.dim
            alpha[i - 1] = 1
            terms[(tuple(alpha), 0)] = f
    div = v.divergence()
    if div:
        terms[((0,) * chart.dim, 1)] = div.scale(GaussRat(1, 0) / 2)
    return NormalForm(chart, terms)


def image_jordan(f: FunElem, v: VecElem) -> NormalForm:
    from .lr import rinehart

    return image_vec(rinehart(f, v))
