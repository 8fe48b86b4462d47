"""Seeded random elements for property suites.

Each trial gets its own ``random.Random`` derived from (seed, suite, trial), so
trials are independent and can run in any order.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iproduct

from .lr import VecElem
from .normal_form import NormalForm
from .rings import ChartSpec, FunElem
from .scalars import GaussRat

__all__ = ["trial_rng", "random_coeff", "random_fun", "random_vec", "random_nf", "random_chart"]


def trial_rng(seed: int, stream: str, trial: int) -> random.Random:
    return random.Random(f"{seed}/{stream}/{trial}")


def random_coeff(rng: random.Random, complex_prob: float = 0.2) -> GaussRat:
    def q():
        return Fraction(rng.randint(-4, 4), rng.choice((1, 1, 1, 2, 3)))

    re = q()
    while not re:
        re = q()
    im = q() if rng.random() < complex_prob else 0
    return GaussRat(re, im)


def _exponents(chart: ChartSpec, degree: int):
    if chart.is_torus:
        return list(iproduct(range(-degree, degree + 1), repeat=chart.dim))
    return [k for k in iproduct(range(degree + 1), repeat=chart.dim) if sum(k) <= degree]


def random_fun(rng: random.Random, chart: ChartSpec, degree: int = 2, max_terms: int = 3, real: bool = False) -> FunElem:
    keys = _exponents(chart, degree)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.choice(keys)] = random_coeff(rng, 0 if real else 0.2)
    f = FunElem(chart, terms)
    if real:
        f = f + f.conj() if chart.is_torus else f
    return f


def random_vec(rng: random.Random, chart: ChartSpec, degree: int = 2, max_terms: int = 2) -> VecElem:
    coeffs = []
    for _ in range(chart.dim):
        coeffs.append(random_fun(rng, chart, degree, max_terms) if rng.random() < 0.8 else FunElem.zero(chart))
    return VecElem(chart, coeffs)


def random_nf(rng: random.Random, chart: ChartSpec, p_degree: int = 2, degree: int = 2, max_terms: int = 3) -> NormalForm:
    alphas = [a for a in iproduct(range(p_degree + 1), repeat=chart.dim) if sum(a) <= p_degree]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        key = (rng.choice(alphas), rng.choice((0, 0, 0, 1)))
        terms[key] = random_fun(rng, chart, degree, 2)
    return NormalForm(chart, terms)


def random_chart(rng: random.Random, kinds=("euclid", "torus"), max_dim: int = 2) -> ChartSpec:
    return ChartSpec(rng.choice(kinds), rng.randint(1, max_dim))
