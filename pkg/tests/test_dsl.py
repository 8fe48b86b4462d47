import json
import random

import pytest

from prcalc import dsl
from prcalc import expr as E
from prcalc.errors import ChartMismatch, DSLSyntaxError, MalformedExpr, UnboundName
from prcalc.expr import normalize
from prcalc.randgen import random_coeff, random_fun, random_vec
from prcalc.rings import ChartSpec
from prcalc.session import parse_scheme, render_scheme, run_script
from prcalc.zcon import builtin_scheme

E2 = ChartSpec.euclid(2)
T1 = ChartSpec.torus(1)
T2 = ChartSpec.torus(2)


def nf(text, chart=None):
    return str(normalize(dsl.parse_expr(text, chart), chart or dsl.infer_chart(text)))


def test_examples():
    assert nf("d1*x1") == "x1*p1 + z"
    assert nf("{x1, d1}") == "-1"
    assert nf("e(1)*e(-1)") == "1"


def test_script_one_chart_each():
    out, _ = run_script("chart euclid:1\nnormalize d1*x1\n{x1, d1}")
    assert out == ["x1*p1 + z", "-1"]
    out, _ = run_script("chart circle\ne(1)*e(-1); sin(t1)*sin(t1) + cos(t1)^2")
    assert out == ["1", "1"]


def test_grammar_coverage():
    assert nf("x1^2 - 3/4*x2", E2) == "x1^2 - 3/4*x2"
    assert nf("i*z") == "i*z"
    assert nf("x1 o d1") == "x1*p1 + 1/2*z"
    assert nf("{x1 o d2, x2 o d1}") == "x1*p1 - x2*p2"
    assert nf("star(x1*d1)") == "x1*p1 + z"
    assert nf("sin(2*t1) + cos(-t1)") == str(
        normalize(dsl.parse_expr("2*sin(t1)*cos(t1) + cos(t1)", T1), T1)
    )
    assert nf("dt1*e(1)") == "e(1)*p1 + i*e(1)*z"
    assert nf("p1*x1") == nf("d1*x1")
    assert nf("-(x1 - x1)") == "0"


def test_let_bindings():
    out, _ = run_script("chart euclid:2\nlet A = x1^2*d2\nlet B = x2 o d1\nbracket A, B\ndivz A*B - B*A")
    assert out == ["x1^2*p1 - 2*x1*x2*p2", "x1^2*p1 - 2*x1*x2*p2"]


def test_commands_in_scripts():
    text = "chart circle\nquantum e(-1) --cutoff 2\nspectrum --cutoff 1 --alpha 1/2\nconstruct-z --scheme circle-rotated\nclassical d1*e(1)"
    out, failed = run_script(text)
    assert json.loads(out[0]) == [["1" if c == r + 1 else "0" for c in range(5)] for r in range(5)]
    assert out[1] == '["-1/2", "1/2", "3/2"]'
    assert out[2] == "z"
    assert out[3] == "e(1)*p1"
    assert not failed


# -- errors -------------------------------------------------------------------------


def test_syntax_error_position_and_expected():
    with pytest.raises(DSLSyntaxError) as info:
        dsl.parse("chart euclid:2\nx1 + * x2")
    err = info.value
    assert (err.line, err.column) == (2, 6)
    assert {"(", "NUMBER", "NAME", "{", "z"} <= set(err.expected)
    assert list(err.expected) == sorted(err.expected)


def test_unclosed_bracket():
    with pytest.raises(DSLSyntaxError) as info:
        dsl.parse_expr("{x1, d1", E2)
    assert "}" in info.value.expected


def test_bad_character():
    with pytest.raises(DSLSyntaxError) as info:
        dsl.parse_expr("x1 $ x2", E2)
    assert (info.value.line, info.value.column) == (1, 4)


def test_unbound_and_mismatch():
    with pytest.raises(UnboundName) as info:
        dsl.parse("chart euclid:1\nfoo*x1")
    assert info.value.name == "foo" and info.value.line == 2
    with pytest.raises(ChartMismatch):
        dsl.parse("chart euclid:1\ne(1)")
    with pytest.raises(ChartMismatch):
        dsl.parse("chart euclid:1\nchart torus:1")
    with pytest.raises(DSLSyntaxError):
        dsl.parse("chart euclid:1\nx2")
    with pytest.raises(MalformedExpr):
        dsl.parse_expr("d1 o d1", E2)


def test_names_must_be_bound_before_use():
    with pytest.raises(UnboundName):
        dsl.parse("chart euclid:1\nnormalize A\nlet A = x1")


# -- round trip ---------------------------------------------------------------------------


def random_tree(rng, chart, depth=3):
    if depth == 0 or rng.random() < 0.3:
        kind = rng.choice(["scalar", "fun", "fun", "vec", "z", "jordan"])
        if kind == "scalar":
            return E.ScalarLeaf(random_coeff(rng, 0.3))
        if kind == "fun":
            return E.FunLeaf(random_fun(rng, chart, degree=1, max_terms=2))
        if kind == "vec":
            return E.VecLeaf(random_vec(rng, chart, degree=1, max_terms=1))
        if kind == "z":
            return E.ZLeaf()
        return E.JordanLeaf(random_fun(rng, chart, degree=1, max_terms=1), random_vec(rng, chart, degree=1, max_terms=1))
    kind = rng.choice(["sum", "prod", "bracket", "star"])
    if kind == "sum":
        return E.Sum(tuple(random_tree(rng, chart, depth - 1) for _ in range(rng.randint(2, 3))))
    if kind == "prod":
        return E.Prod(tuple(random_tree(rng, chart, depth - 1) for _ in range(2)))
    if kind == "bracket":
        return E.Bracket(random_tree(rng, chart, depth - 1), random_tree(rng, chart, depth - 1))
    return E.Star(random_tree(rng, chart, depth - 1))


@pytest.mark.parametrize("chart", [E2, T2, T1])
def test_round_trip(chart):
    rng = random.Random(f"round-trip/{chart}")
    for _ in range(100):
        tree = random_tree(rng, chart)
        text = dsl.render(tree)
        back = dsl.parse_expr(text, chart)
        assert normalize(back, chart) == normalize(tree, chart), text


def test_scheme_files_round_trip():
    for name in ("circle", "circle-rotated", "torus:2", "euclid:3"):
        s = builtin_scheme(name)
        assert parse_scheme(render_scheme(s)).triples == s.triples


def test_parse_is_deterministic():
    text = "chart torus:2\nlet A = sin(t1) o dt2\nbracket A, e(1,1)*dt1\ncommutator A, A*A"
    assert run_script(text) == run_script(text)
