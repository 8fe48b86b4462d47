import random
from fractions import Fraction

import pytest
import sympy as sp

import oracles
from oracles import Z
from prcalc.errors import ChartMismatch, NotDivisible
from prcalc.expr import Bracket, FunLeaf, JordanLeaf, Prod, Star, Sum, VecLeaf, ZLeaf, comm, normalize
from prcalc.lr import VecElem, rinehart, vec_apply, vec_bracket
from prcalc.normal_form import (
    NormalForm,
    commutator,
    divide_z,
    image_jordan,
    image_vec,
    involution,
    poisson_bracket,
)
from prcalc.randgen import random_fun, random_nf, random_vec
from prcalc.rings import ChartSpec, FunElem
from prcalc.scalars import GaussRat

E2 = ChartSpec.euclid(2)
T1 = ChartSpec.torus(1)
T2 = ChartSpec.torus(2)
CHARTS = [E2, T2]

x1 = NormalForm.from_fun(FunElem.var(E2, 1))
x2 = NormalForm.from_fun(FunElem.var(E2, 2))
p1 = NormalForm.momentum(E2, 1)
p2 = NormalForm.momentum(E2, 2)
z = NormalForm.z(E2)


# -- examples ----------------------------------------------------------------


def test_defining_rewrite():
    assert p1 * x1 == x1 * p1 + z
    assert str(p1 * x1) == "x1*p1 + z"
    assert p1 * x1 * x1 == x1 * x1 * p1 + (x1 * z).scale(2)
    assert str(p1 * x1 * x1) == "x1^2*p1 + 2*x1*z"


def test_two_step_rewrite_against_operator_oracle():
    lhs = p1 * x1 * x1
    X1 = oracles.coords(E2)[0]
    assert oracles.op_equal(lhs, lambda f: Z * sp.diff(X1**2 * f, X1))


def test_symmetric_embedding_example():
    s, c = FunElem.sin(T1), FunElem.cos(T1)
    got = image_vec(VecElem(T1, [s]))
    p, zt = NormalForm.momentum(T1, 1), NormalForm.z(T1)
    assert got == NormalForm.from_fun(s) * p + (zt * NormalForm.from_fun(c)).scale(Fraction(1, 2))


def test_bracket_examples():
    assert poisson_bracket(x1, p1) == NormalForm.scalar(E2, -1)
    assert poisson_bracket(p1, x1 * x2) == x2
    rng = random.Random(3)
    for chart in CHARTS:
        a = random_nf(rng, chart)
        assert poisson_bracket(NormalForm.z(chart), a).is_zero()
        assert poisson_bracket(a, NormalForm.z(chart)).is_zero()


def test_commutator_examples():
    assert commutator(p1, x1) == z
    assert commutator(p1, p2).is_zero()
    c, s = FunElem.cos(T1), FunElem.sin(T1)
    got = commutator(image_vec(VecElem(T1, [c])), image_vec(VecElem(T1, [s])))
    assert got == NormalForm.z(T1) * NormalForm.momentum(T1, 1)


def test_divide_z_examples():
    assert divide_z(NormalForm.z(E2)) == NormalForm.scalar(E2)
    lhs = divide_z(commutator(p1, x1 * x1))
    assert lhs == x1.scale(2) == poisson_bracket(p1, x1 * x1)
    with pytest.raises(NotDivisible):
        divide_z(x1)


def test_involution_examples():
    assert involution(x1) == x1
    assert involution(z) == -z
    assert involution(x1 * p1) == p1 * x1 == x1 * p1 + z
    assert involution(x1.scale(GaussRat(0, 1))) == x1.scale(GaussRat(0, -1))


def test_involution_example_against_adjoint_oracle():
    a = x1 * p1
    p = oracles.psi(E2)
    assert oracles.same(oracles.act(involution(a), p), oracles.adjoint_act(a, p))


def test_rendering_orders_by_momentum_degree():
    assert str(p1 * p1 * x1) == "x1*p1^2 + 2*p1*z"
    assert str(NormalForm.zero(E2)) == "0"


def test_chart_mismatch():
    with pytest.raises(ChartMismatch):
        x1 + NormalForm.momentum(T2, 1)


def test_expression_tree_normalization():
    d1 = VecLeaf(VecElem.frame(E2, 1))
    X1 = FunLeaf(FunElem.var(E2, 1))
    assert normalize(Prod((d1, X1))) == x1 * p1 + z
    assert normalize(Bracket(X1, d1)) == NormalForm.scalar(E2, -1)
    assert normalize(Star(Prod((X1, d1)))) == x1 * p1 + z
    assert normalize(comm(d1, X1)) == z
    assert normalize(Sum((ZLeaf(), ZLeaf())), E2) == z.scale(2)
    jl = JordanLeaf(FunElem.var(E2, 2), VecElem.frame(E2, 1))
    assert normalize(jl) == x2 * p1
    with pytest.raises(ChartMismatch):
        normalize(Prod((X1, FunLeaf(FunElem.fourier(T1, 1)))))


# -- properties against the operator oracle ------------------------------------


@pytest.mark.parametrize("chart", CHARTS)
def test_product_is_operator_composition(chart):
    rng = random.Random(f"nf-prod/{chart}")
    for _ in range(30):
        a, b = random_nf(rng, chart), random_nf(rng, chart)
        p = oracles.psi(chart)
        assert oracles.same(oracles.act(a * b, p), oracles.act(a, oracles.act(b, p)))


@pytest.mark.parametrize("chart", CHARTS)
def test_bracket_is_commutator_over_z(chart):
    rng = random.Random(f"nf-br/{chart}")
    for _ in range(30):
        a, b = random_nf(rng, chart), random_nf(rng, chart)
        p = oracles.psi(chart)
        comm_op = oracles.act(a, oracles.act(b, p)) - oracles.act(b, oracles.act(a, p))
        assert oracles.same(Z * oracles.act(poisson_bracket(a, b), p), comm_op)


@pytest.mark.parametrize("chart", CHARTS)
def test_involution_is_formal_adjoint(chart):
    rng = random.Random(f"nf-inv/{chart}")
    for _ in range(30):
        a = random_nf(rng, chart)
        p = oracles.psi(chart)
        assert oracles.same(oracles.act(involution(a), p), oracles.adjoint_act(a, p))


@pytest.mark.parametrize("chart", CHARTS)
def test_image_is_symmetric_ordering(chart):
    rng = random.Random(f"nf-img/{chart}")
    for _ in range(30):
        v = random_vec(rng, chart)
        p = oracles.psi(chart)
        sym = sum(
            (Z / 2) * (oracles.fun(c) * oracles.d(chart, p, i) + oracles.d(chart, oracles.fun(c) * p, i))
            for i, c in enumerate(v.coeffs, start=1)
        )
        assert oracles.same(oracles.act(image_vec(v), p), sym)


@pytest.mark.parametrize("chart", CHARTS)
def test_algebraic_properties(chart):
    rng = random.Random(f"nf-alg/{chart}")
    for _ in range(60):
        a, b, c = (random_nf(rng, chart, p_degree=1, degree=1) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert poisson_bracket(a, b) == -poisson_bracket(b, a)
        jac = (
            poisson_bracket(a, poisson_bracket(b, c))
            + poisson_bracket(b, poisson_bracket(c, a))
            + poisson_bracket(c, poisson_bracket(a, b))
        )
        assert jac.is_zero()
        assert poisson_bracket(a, b * c) == poisson_bracket(a, b) * c + b * poisson_bracket(a, c)
        assert poisson_bracket(a * b, c) == a * poisson_bracket(b, c) + poisson_bracket(a, c) * b
        assert involution(involution(a)) == a
        assert involution(a * b) == involution(b) * involution(a)
        assert divide_z(commutator(a, b)) == poisson_bracket(a, b)


@pytest.mark.parametrize("chart", CHARTS)
def test_lr_embedding(chart):
    rng = random.Random(f"nf-lr/{chart}")
    for _ in range(60):
        v, w = random_vec(rng, chart), random_vec(rng, chart)
        f = random_fun(rng, chart)
        iv, iw, F = image_vec(v), image_vec(w), NormalForm.from_fun(f)
        zc = NormalForm.z(chart)
        assert commutator(iv, iw) == zc * image_vec(vec_bracket(v, w))
        assert commutator(iv, F) == zc * NormalForm.from_fun(vec_apply(v, f))
        assert image_jordan(f, v) == (F * iv + iv * F).scale(Fraction(1, 2))
        assert poisson_bracket(iv, iw) == image_vec(vec_bracket(v, w))
        # real fields map to self-adjoint elements
        if v.is_real():
            assert involution(iv) == iv


@pytest.mark.parametrize("chart", CHARTS)
def test_dvf_in_model(chart):
    rng = random.Random(f"nf-dvf/{chart}")
    for _ in range(20):
        a, b, c, d = (random_nf(rng, chart, p_degree=1, degree=1, max_terms=2) for _ in range(4))
        lhs = commutator(a, b) * poisson_bracket(c, d) - poisson_bracket(a, b) * commutator(c, d)
        assert lhs.is_zero()


def test_rinehart_compat_with_image():
    f = FunElem.var(E2, 1)
    v = VecElem.frame(E2, 2)
    assert image_vec(rinehart(f, v)) == x1 * p2
