"""Partition schemes and the central element built as a sum of commutators."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import expr as E
from .errors import CentralityFailed, CertificateFailed, ChartMismatch
from .lr import VecElem, rinehart, vec_apply
from .normal_form import NormalForm, commutator, image_jordan, poisson_bracket
from .rings import ChartSpec, FunElem
from .verdict import FAIL, PASS, Verdict

__all__ = [
    "Triple",
    "PartitionScheme",
    "validate_scheme",
    "construct_Z",
    "z_expression",
    "check_central",
    "central_via_leibniz",
    "heisenberg_check",
    "builtin_scheme",
    "chart_generators",
]


@dataclass(frozen=True)
class Triple:
    q: FunElem
    g: FunElem
    w: VecElem

    @property
    def p(self) -> VecElem:
        return rinehart(self.g, self.w)


def fun_vec_bracket(q: FunElem, w: VecElem) -> FunElem:
    """{q, w} = -w(q)."""
    return -vec_apply(w, q)


@dataclass(frozen=True)
class PartitionScheme:
    chart: ChartSpec
    triples: tuple
    name: str = ""

    def __init__(self, chart, triples: Iterable[Triple], name: str = "", validate: bool = True):
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "triples", tuple(triples))
        object.__setattr__(self, "name", name)
        for t in self.triples:
            for part in (t.q, t.g, t.w):
                if part.chart != chart:
                    raise ChartMismatch(chart, part.chart)
        if validate:
            validate_scheme(self)

    def with_triple(self, t: Triple, validate: bool = True):
        return PartitionScheme(self.chart, self.triples + (t,), self.name, validate)


def certificate(s: PartitionScheme) -> FunElem:
    out = FunElem.zero(s.chart)
    for t in s.triples:
        out = out + t.g * fun_vec_bracket(t.q, t.w)
    return out


def validate_scheme(s: PartitionScheme) -> Verdict:
    """Check sum g_i {q_i, w_i} = 1 and its rewritten form sum {q_i, g_i o w_i} = 1."""
    one = FunElem.const(s.chart)
    total = certificate(s)
    if total != one:
        raise CertificateFailed(total - one)
    rewritten = FunElem.zero(s.chart)
    for t in s.triples:
        rewritten = rewritten + fun_vec_bracket(t.q, t.p)
    if rewritten != one:
        raise CertificateFailed(rewritten - one, "rewritten certificate sum {q, g o w} failed")
    return Verdict("certificate", PASS, data={"triples": len(s.triples)})


def z_expression(s: PartitionScheme):
    """Unreduced tree for sum_i [q_i, g_i o w_i]."""
    return E.Sum(tuple(E.comm(E.FunLeaf(t.q), E.JordanLeaf(t.g, t.w)) for t in s.triples))


def construct_Z(s: PartitionScheme) -> NormalForm:
    validate_scheme(s)
    return E.normalize(z_expression(s), s.chart)


def central_via_leibniz(s: PartitionScheme, a: NormalForm) -> NormalForm:
    """sum_i ([{q_i, A}, p_i] + [q_i, {p_i, A}]), the Leibniz-expanded form of {Z, A}."""
    out = NormalForm.zero(s.chart)
    for t in s.triples:
        q = NormalForm.from_fun(t.q)
        p = image_jordan(t.g, t.w)
        out = out + commutator(poisson_bracket(q, a), p) + commutator(q, poisson_bracket(p, a))
    return out


def chart_generators(chart: ChartSpec):
    """Functions first (x_i or e(+-1) per angle), then momenta."""
    gens = []
    for i in range(1, chart.dim + 1):
        if chart.is_torus:
            for k in (1, -1):
                freq = [0] * chart.dim
                freq[i - 1] = k
                gens.append(NormalForm.from_fun(FunElem.fourier(chart, tuple(freq))))
        else:
            gens.append(NormalForm.from_fun(FunElem.var(chart, i)))
    gens.extend(NormalForm.momentum(chart, i) for i in range(1, chart.dim + 1))
    return gens


def check_central(zc, probes: Sequence[NormalForm] = None, chart: ChartSpec = None, rng=None, n_random: int = 50) -> Verdict:
    """Both the commutator and the Lie bracket of ``zc`` with every probe must vanish.

    ``zc`` may be an unreduced expression tree.  The default probes are the
    chart generators followed by ``n_random`` seeded random elements.
    """
    if not isinstance(zc, NormalForm):
        zc = E.normalize(zc, chart)
    if probes is None:
        from .randgen import random_nf

        rng = rng or random.Random(0)
        probes = chart_generators(zc.chart) + [random_nf(rng, zc.chart) for _ in range(n_random)]
    for a in probes:
        if commutator(zc, a):
            raise CentralityFailed(a, "commutator")
        if poisson_bracket(zc, a):
            raise CentralityFailed(a, "bracket")
    return Verdict("central", PASS, data={"probes": len(probes)})


def heisenberg_check(n: int) -> Verdict:
    """Cartesian momenta and coordinates: [x_i, p_j] = -z delta_ij, [x_i, x_j] = [p_i, p_j] = 0."""
    chart = ChartSpec.euclid(n)
    xs = [NormalForm.from_fun(FunElem.var(chart, i)) for i in range(1, n + 1)]
    ps = [NormalForm.momentum(chart, i) for i in range(1, n + 1)]
    expected = -NormalForm.z(chart)
    zero = NormalForm.zero(chart)
    diag = []
    for i in range(n):
        for j in range(n):
            c = commutator(xs[i], ps[j])
            want = expected if i == j else zero
            if c != want:
                return Verdict("heisenberg", FAIL, witness=f"[x{i+1}, p{j+1}] = {c}")
            b = poisson_bracket(xs[i], ps[j])
            if b != (NormalForm.scalar(chart, -1) if i == j else zero):
                return Verdict("heisenberg", FAIL, witness=f"{{x{i+1}, p{j+1}}} = {b}")
            if i == j:
                diag.append(c)
            if commutator(xs[i], xs[j]) or commutator(ps[i], ps[j]):
                return Verdict("heisenberg", FAIL, witness=f"coordinate or momentum pair ({i+1},{j+1}) fails to commute")
    if any(d != diag[0] for d in diag):
        return Verdict("heisenberg", FAIL, witness="[x_i, p_i] depends on i")
    return Verdict("heisenberg", PASS, data={"n": n, "diagonal": str(diag[0])})


# ---------------------------------------------------------------------------
# builtin schemes
# ---------------------------------------------------------------------------


def circle_scheme(chart: ChartSpec = None, j: int = 1, weight=1) -> list:
    chart = chart or ChartSpec.torus(1)
    s, c = FunElem.sin(chart, j), FunElem.cos(chart, j)
    d = VecElem.frame(chart, j)
    return [Triple(-s, c.scale(weight), d), Triple(c, s.scale(weight), d)]


def rotated_circle_scheme(chart: ChartSpec = None) -> list:
    """Three rotated pairs at angles 0 and +-phi with cos(phi) = 3/5, sin(phi) = 4/5.

    With q = -sin(t - phi) and g = w * cos(t - phi) the certificate is
    sum w * cos^2(t - phi); the weights 7/16, 25/32, 25/32 cancel the
    second harmonic and sum to 2.
    """
    chart = chart or ChartSpec.torus(1)
    s, c = FunElem.sin(chart), FunElem.cos(chart)
    d = VecElem.frame(chart, 1)
    out = []
    for cp, sp, w in ((1, 0, Fraction(7, 16)), (Fraction(3, 5), Fraction(4, 5), Fraction(25, 32)),
                      (Fraction(3, 5), Fraction(-4, 5), Fraction(25, 32))):
        sin_shift = s.scale(cp) - c.scale(sp)
        cos_shift = c.scale(cp) + s.scale(sp)
        out.append(Triple(-sin_shift, cos_shift.scale(w), d))
    return out


def builtin_scheme(name: str) -> PartitionScheme:
    """``circle``, ``circle-rotated``, ``torus:n`` or ``euclid:n``."""
    if name == "circle":
        return PartitionScheme(ChartSpec.torus(1), circle_scheme(), name)
    if name == "circle-rotated":
        return PartitionScheme(ChartSpec.torus(1), rotated_circle_scheme(), name)
    kind, _, dim = name.partition(":")
    if kind == "torus" and dim.isdigit() and int(dim) >= 1:
        chart = ChartSpec.torus(int(dim))
        triples = []
        for j in range(1, chart.dim + 1):
            triples += circle_scheme(chart, j, Fraction(1, chart.dim))
        return PartitionScheme(chart, triples, name)
    if kind == "euclid" and dim.isdigit() and int(dim) >= 1:
        chart = ChartSpec.euclid(int(dim))
        return PartitionScheme(
            chart, [Triple(-FunElem.var(chart, 1), FunElem.const(chart), VecElem.frame(chart, 1))], name
        )
    raise KeyError(f"unknown builtin scheme {name!r}")
