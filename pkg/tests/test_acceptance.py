"""One test per acceptance criterion; each records a PASS/FAIL line in the terminal summary."""

import io
import json
import random
import time
from fractions import Fraction

from prcalc import dsl
from prcalc.cli import main
from prcalc.expr import normalize
from prcalc.free import lie_env_check, lie_env_witness, su2
from prcalc.normal_form import NormalForm, commutator, involution, poisson_bracket
from prcalc.quotients import ClassicalSymbol, RepConfig, classical_bracket, twist_equivalent
from prcalc.rings import ChartSpec, FunElem
from prcalc.session import run_script
from prcalc.suites import run_suite
from prcalc.zcon import builtin_scheme, check_central, construct_Z, heisenberg_check

SEED = 20240601


def _suite(name, trials=None):
    start = time.perf_counter()
    records = run_suite(name, trials, SEED)
    elapsed = time.perf_counter() - start
    bad = [r for r in records if not r.ok]
    return records, bad, elapsed


def _per_chart(records):
    counts = {}
    for r in records:
        chart = r.name.split("[", 1)[1].split("]", 1)[0]
        counts[chart] = counts.get(chart, 0) + 1
    return counts


def test_01_lr_axioms(criterion):
    records, bad, elapsed = _suite("lr-axioms", 400)
    counts = _per_chart(records)
    ok = not bad and min(counts.values()) >= 200 and elapsed < 30
    criterion(1, "Lie-Rinehart axioms on both charts", ok, f"{counts}, {elapsed:.1f}s")
    assert ok, bad[:3]


def test_02_compact_central_element(criterion):
    start = time.perf_counter()
    results = []
    for name in ("circle", "circle-rotated", "torus:2"):
        s = builtin_scheme(name)
        Z = construct_Z(s)
        central = check_central(Z, rng=random.Random(f"{SEED}/{name}"), n_random=50)
        results.append(Z == NormalForm.z(s.chart) and bool(central) and involution(Z) == -Z)
    records, bad, _ = _suite("theorem1")
    elapsed = time.perf_counter() - start
    ok = all(results) and not bad and elapsed < 30
    criterion(2, "construct_Z = z on three compact schemes, central, Z* = -Z", ok, f"{elapsed:.1f}s")
    assert ok


def test_03_z_divisibility(criterion):
    records, bad, elapsed = _suite("z-divisibility", 400)
    counts = _per_chart(records)
    ok = not bad and min(counts.values()) >= 200 and elapsed < 60
    criterion(3, "commutator = z * bracket, term for term", ok, f"{counts}, {elapsed:.1f}s")
    assert ok, bad[:3]


def test_04_dvf(criterion):
    model, bad_model, t1 = _suite("dvf", 400)
    free, bad_free, t2 = _suite("free-defect", 500)
    ok = not bad_model and not bad_free and len(model) >= 200 and len(free) >= 500 and t1 + t2 < 60
    criterion(4, "DVF identity in the model algebra and free-mode closed form", ok, f"{len(model)}+{len(free)} cases, {t1 + t2:.1f}s")
    assert ok, (bad_model + bad_free)[:3]


def test_05_jordan(criterion):
    records, bad, _ = _suite("jordan", 200)
    counts = _per_chart(records)
    ok = not bad and min(counts.values()) >= 100
    criterion(5, "image(f o v) is the symmetrized product", ok, str(counts))
    assert ok, bad[:3]


def test_06_quantum_lr(criterion):
    records, bad, _ = _suite("quantum-lr", 200)
    ok = not bad and len(records) >= 100
    criterion(6, "[i(v), i(w)] = z i({v,w}) and [i(v), f] = z v(f)", ok, f"{len(records)} pairs")
    assert ok, bad[:3]


def test_07_classical_quotient(criterion):
    records, bad, _ = _suite("classical-hom", 400)
    chart = ChartSpec.euclid(1)
    pin = classical_bracket(ClassicalSymbol.momentum(chart, 1), ClassicalSymbol.from_fun(FunElem.var(chart, 1)))
    pinned = pin == ClassicalSymbol.from_fun(FunElem.const(chart))
    ok = not bad and len(records) >= 200 and pinned
    criterion(7, "classical projection is a Poisson homomorphism, {p1, x1} = 1", ok, f"{len(records)} pairs")
    assert ok, bad[:3]


def test_08_quantum_quotient(criterion):
    records, bad, elapsed = _suite("rep-interior", 100)
    alphas = {r.name.split("=", 1)[1].split("]", 1)[0] for r in records}
    ok = not bad and len(records) >= 100 and alphas == {"0", "1/3"}
    criterion(8, "truncated circle representation: interior products and adjoints", ok, f"N=16, alpha in {sorted(alphas)}, {elapsed:.1f}s")
    assert ok, bad[:3]


def test_09_twist_classification(criterion):
    grid = [Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(1)]
    verdicts = [
        twist_equivalent(RepConfig(4, a), RepConfig(4, b)) == ((a - b).denominator == 1) for a in grid for b in grid
    ]
    _, bad, _ = _suite("twist")
    ok = all(verdicts) and not bad
    criterion(9, "twist equivalence iff alpha - alpha' is an integer", ok, f"{len(verdicts)} pairs")
    assert ok


def test_10_heisenberg(criterion):
    verdicts = [heisenberg_check(n) for n in (1, 2, 3)]
    chart = ChartSpec.euclid(3)
    diag = [
        commutator(NormalForm.from_fun(FunElem.var(chart, i)), NormalForm.momentum(chart, i)) for i in (1, 2, 3)
    ]
    ok = all(verdicts) and diag[0] == diag[1] == diag[2]
    criterion(10, "cartesian Heisenberg relations, [x_i, p_i] independent of i", ok, f"[x_i, p_i] = {diag[0]}")
    assert ok


def test_11_lie_envelope(criterion):
    L = su2()
    A, B, _ = L.gens()
    start = time.perf_counter()
    verdict = lie_env_check(L, A, B, saturation_depth=3)
    unit = lie_env_check(L, A, B, saturation_depth=1, scale=1)
    witness_ok = lie_env_witness(scale=verdict.data.get("scale") or -2).is_zero()
    elapsed = time.perf_counter() - start
    ok = verdict.status == "proved" and verdict.data["depth"] <= 3 and witness_ok
    detail = (
        f"proved at depth {verdict.data['depth']} with constant {verdict.data['scale']}; "
        f"unit constant is {unit.status}; image witness {'vanishes' if witness_ok else 'FAILS'}; {elapsed:.1f}s"
    )
    criterion(11, "su(2) envelope identity modulo DVF", ok, detail)
    assert ok


def test_12_cli(criterion):
    # round trip: render then parse gives the same normal form
    from test_dsl import random_tree

    rng = random.Random(SEED)
    charts = [ChartSpec.euclid(2), ChartSpec.torus(2)]
    trips = 0
    for i in range(240):
        chart = charts[i % 2]
        tree = random_tree(rng, chart)
        assert normalize(dsl.parse_expr(dsl.render(tree), chart), chart) == normalize(tree, chart)
        trips += 1

    script = "chart euclid:2\nlet A = x1^2*d2\nbracket A, x2 o d1\ncheck --suite all --trials 10 --seed 7\n"
    deterministic = run_script(script) == run_script(script)

    start = time.perf_counter()
    out, err = io.StringIO(), io.StringIO()
    code = main(["check", "--suite", "all", "--seed", str(SEED)], out, err)
    elapsed = time.perf_counter() - start
    report = json.loads(out.getvalue())
    unknown = main(["check", "--suite", "unknown"], io.StringIO(), io.StringIO())

    ok = trips >= 200 and deterministic and code == 0 and report["ok"] and elapsed < 300 and unknown == 2
    criterion(
        12,
        "CLI round trip, byte determinism, full suite run",
        ok,
        f"{trips} round trips, {report['passed']} records in {elapsed:.1f}s",
    )
    assert ok


def test_cli_examples_from_parse_contract():
    assert str(normalize(dsl.parse_expr("d1*x1"))) == "x1*p1 + z"
    assert str(normalize(dsl.parse_expr("{x1, d1}"))) == "-1"
    assert str(normalize(dsl.parse_expr("e(1)*e(-1)"))) == "1"
    assert poisson_bracket(NormalForm.z(ChartSpec.torus(1)), NormalForm.momentum(ChartSpec.torus(1), 1)).is_zero()
