"""Seeded property suites.  Each suite yields one record per check."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import free as F
from .errors import PrcalcError, UnknownSuite
from .lr import rinehart, vec_apply, vec_bracket
from .normal_form import (
    NormalForm,
    commutator,
    divide_z,
    image_jordan,
    image_vec,
    involution,
    poisson_bracket,
)
from .quotients import (
    ClassicalSymbol,
    RepConfig,
    adjoint_check,
    classical_bracket,
    classical_project,
    interior_radius,
    quantum_rep,
    rep_interior_check,
    twist_equivalent,
)
from .randgen import random_fun, random_nf, random_vec, trial_rng
from .rings import ChartSpec, FunElem
from .zcon import (
    Triple,
    builtin_scheme,
    central_via_leibniz,
    chart_generators,
    check_central,
    construct_Z,
    heisenberg_check,
)

__all__ = ["Record", "SUITES", "run_suite", "resolved_trials", "DEFAULT_CHARTS"]

DEFAULT_CHARTS = (ChartSpec.euclid(2), ChartSpec.torus(2))


@dataclass
class Record:
    name: str
    anchor: str
    ok: bool
    witness: Optional[str] = None
    elapsed: Optional[float] = None

    def to_json(self, timing: bool):
        return {
            "name": self.name,
            "anchor": self.anchor,
            "verdict": "pass" if self.ok else "fail",
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed * 1000, 3) if timing and self.elapsed is not None else None,
        }


class _Fail(Exception):
    pass


def _expect(cond, witness):
    if not cond:
        raise _Fail(witness)


def _run_check(name, anchor, fn) -> Record:
    start = time.perf_counter()
    try:
        fn()
        rec = Record(name, anchor, True)
    except _Fail as exc:
        rec = Record(name, anchor, False, str(exc))
    except (PrcalcError, AssertionError) as exc:
        rec = Record(name, anchor, False, f"{type(exc).__name__}: {exc}")
    rec.elapsed = time.perf_counter() - start
    return rec


def _per_trial(suite, anchor, trials, seed, body, charts=DEFAULT_CHARTS):
    """Trial t runs on charts[t % len(charts)] with its own random stream."""
    width = len(str(max(trials - 1, 0)))
    out = []
    for t in range(trials):
        chart = charts[t % len(charts)]
        rng = trial_rng(seed, suite, t)
        out.append(_run_check(f"{suite}[{chart}]#{t:0{width}d}", anchor, lambda: body(rng, chart)))
    return out


# ---------------------------------------------------------------------------


def suite_lr_axioms(trials, seed):
    def body(rng, chart):
        u, v, w = (random_vec(rng, chart, degree=3) for _ in range(3))
        f, g, h = (random_fun(rng, chart, degree=3) for _ in range(3))
        jac = vec_bracket(u, vec_bracket(v, w)) + vec_bracket(v, vec_bracket(w, u)) + vec_bracket(w, vec_bracket(u, v))
        _expect(jac.is_zero(), f"Jacobi residual {jac}")
        _expect(rinehart(f, rinehart(g, v)) == rinehart(f * g, v), "f o (g o v) != (fg) o v")
        lhs = vec_bracket(v, rinehart(f, w))
        rhs = rinehart(vec_apply(v, f), w) + rinehart(f, vec_bracket(v, w))
        _expect(lhs == rhs, f"{{v, f o w}} - v(f) o w - f o {{v,w}} = {lhs - rhs}")
        op = vec_apply(vec_bracket(v, w), h)
        _expect(op == vec_apply(v, vec_apply(w, h)) - vec_apply(w, vec_apply(v, h)), "bracket is not the operator commutator")
        _expect(vec_apply(v, FunElem.const(chart)).is_zero(), "v(1) != 0")

    return _per_trial("lr-axioms", "Lie-Rinehart axioms: Jacobi, f o (g o v) = (fg) o v, {v, f o w} = v(f) o w + f o {v,w}",
                      trials, seed, body)


def suite_dvf(trials, seed):
    def body(rng, chart):
        A, B, C, D = (random_nf(rng, chart) for _ in range(4))
        d = commutator(A, B) * poisson_bracket(C, D) - poisson_bracket(A, B) * commutator(C, D)
        _expect(d.is_zero(), f"[A,B]{{C,D}} - {{A,B}}[C,D] = {d}")

    return _per_trial("dvf", "[A,B]{C,D} = {A,B}[C,D]", trials, seed, body)


def suite_z_divisibility(trials, seed):
    def body(rng, chart):
        A, B = random_nf(rng, chart), random_nf(rng, chart)
        c = commutator(A, B)
        q = divide_z(c)
        b = poisson_bracket(A, B)
        _expect(q == b, f"[A,B]/z - {{A,B}} = {q - b}")

    return _per_trial("z-divisibility", "[A,B] = Z{A,B}", trials, seed, body)


def suite_jordan(trials, seed):
    def body(rng, chart):
        f, v = random_fun(rng, chart), random_vec(rng, chart)
        fn, iv = NormalForm.from_fun(f), image_vec(v)
        sym = (fn * iv + iv * fn).scale(Fraction(1, 2))
        _expect(image_jordan(f, v) == sym, f"image(f o v) - sym = {image_jordan(f, v) - sym}")

    return _per_trial("jordan", "i(f o v) = 1/2 (i(f) i(v) + i(v) i(f))", trials, seed, body)


def suite_quantum_lr(trials, seed):
    def body(rng, chart):
        v, w, f = random_vec(rng, chart), random_vec(rng, chart), random_fun(rng, chart)
        lhs = commutator(image_vec(v), image_vec(w))
        rhs = image_vec(vec_bracket(v, w)).times_z()
        _expect(lhs == rhs, f"[i(v), i(w)] - z i({{v,w}}) = {lhs - rhs}")
        lhs = commutator(image_vec(v), NormalForm.from_fun(f))
        rhs = NormalForm.from_fun(vec_apply(v, f)).times_z()
        _expect(lhs == rhs, f"[i(v), f] - z v(f) = {lhs - rhs}")

    return _per_trial("quantum-lr", "[i(v), i(w)] = z i({v,w}), [i(v), f] = z v(f)", trials, seed, body)


def suite_classical_hom(trials, seed):
    def body(rng, chart):
        A, B = random_nf(rng, chart), random_nf(rng, chart)
        cA, cB = classical_project(A), classical_project(B)
        _expect(classical_project(A * B) == cA * cB, "projection is not multiplicative")
        _expect(classical_project(poisson_bracket(A, B)) == classical_bracket(cA, cB), "projection does not intertwine brackets")
        _expect(classical_project(divide_z(commutator(A, B))) == classical_bracket(cA, cB), "[A,B]/z does not project to the classical bracket")
        q = FunElem.fourier(chart, 1) if chart.is_torus else FunElem.var(chart, 1)
        got = classical_bracket(ClassicalSymbol.momentum(chart, 1), ClassicalSymbol.from_fun(q))
        _expect(got == ClassicalSymbol.from_fun(q.derive(1)), f"{{p1, q}} = {got}")

    return _per_trial("classical-hom", "z = 0 quotient: canonical brackets {p_i, x_j} = delta_ij", trials, seed, body)


REP_ALPHAS = (Fraction(0), Fraction(1, 3))


def suite_rep_interior(trials, seed):
    circle = ChartSpec.torus(1)
    out = []
    width = len(str(max(trials - 1, 0)))
    for t in range(trials):
        rng = trial_rng(seed, "rep-interior", t)
        cfg = RepConfig(16, REP_ALPHAS[t % len(REP_ALPHAS)])

        def body(rng=rng, cfg=cfg):
            A, B = random_nf(rng, circle, degree=3), random_nf(rng, circle, degree=3)
            v = rep_interior_check(A, B, cfg)
            _expect(v, v.witness)
            v = adjoint_check(A, cfg)
            _expect(v, f"adjoint: {v.witness}")
            f, w = random_fun(rng, circle, degree=3), random_vec(rng, circle, degree=3)
            fn, iw = NormalForm.from_fun(f), image_vec(w)
            radius = interior_radius(cfg, fn, iw)
            lhs = quantum_rep(fn, cfg) @ quantum_rep(iw, cfg) - quantum_rep(iw, cfg) @ quantum_rep(fn, cfg)
            rhs = quantum_rep(poisson_bracket(fn, iw).times_z(), cfg)
            _expect((lhs - rhs).block(radius).entries == {}, "[pi(f), pi(i(v))] != pi(z{f, v}) on the interior")

        out.append(_run_check(f"rep-interior[alpha={cfg.alpha}]#{t:0{width}d}",
                              "z > 0 quotient: pi(AB) = pi(A)pi(B), pi(A*) = pi(A)^*", body))
    return out


TWIST_GRID = (Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(1))


def suite_twist(trials, seed):
    out = []
    for a in TWIST_GRID:
        for b in TWIST_GRID:
            def body(a=a, b=b):
                got = twist_equivalent(RepConfig(4, a), RepConfig(4, b))
                want = (a - b).denominator == 1
                _expect(got == want, f"alpha={a} vs {b}: equivalent={got}, expected {want}")

            out.append(_run_check(f"twist[{a}~{b}]", "twisted circle representations agree iff alpha - alpha' is an integer", body))
    return out


def suite_involution(trials, seed):
    def body(rng, chart):
        A, B = random_nf(rng, chart), random_nf(rng, chart)
        _expect(involution(involution(A)) == A, "** != id")
        _expect(involution(A * B) == involution(B) * involution(A), "(AB)* != B*A*")
        _expect(involution(poisson_bracket(A, B)) == poisson_bracket(involution(A), involution(B)), "{A,B}* != {A*,B*}")

    return _per_trial("involution", "(AB)* = B*A*, {A,B}* = {A*,B*}", trials, seed, body)


def suite_free_defect(trials, seed):
    out = []
    width = len(str(max(trials - 1, 0)))
    for t in range(trials):
        rng = trial_rng(seed, "free-defect", t)

        def body(rng=rng):
            L = F.FreeLiePoisson(F.random_structure_constants(rng))
            quad = [F.random_element(L, rng) for _ in range(4)]
            defect = F.dvf_defect(*quad, check=False)
            closed = F.dvf_closed_form(*quad)
            _expect(defect == closed, f"defect {defect} != closed form {closed}")

        out.append(_run_check(f"free-defect#{t:0{width}d}", "free mode: {AB,CD} expansions differ by {A,C}[B,D] - [A,C]{B,D}", body))
    return out


def suite_lie_env(trials, seed):
    out = []

    def proved():
        L = F.su2()
        A, B, _ = L.gens()
        v = F.lie_env_check(L, A, B, saturation_depth=3)
        _expect(v.status == "proved", f"verdict {v.status}")
        _expect(v.data.get("scale") == -2, f"normalization constant {v.data.get('scale')}")

    def witness():
        _expect(F.lie_env_witness(1, 2, scale=-2).is_zero(), "rotation-field image does not vanish")

    def abelian():
        L = F.abelian(3)
        v = F.lie_env_check(L, L.gen(1), L.gen(2))
        _expect(v.status == "proved", f"verdict {v.status}")

    anchor = "[A,B] Z1 = -2 {A,B} Z2 modulo DVF, Z1 = g_ij Li Lj, Z2 = c_ijk Li Lj Lk"
    out.append(_run_check("lie-env[su2]", anchor, proved))
    out.append(_run_check("lie-env[rotation-image]", anchor, witness))
    out.append(_run_check("lie-env[abelian]", anchor, abelian))
    return out


CENTRAL_SCHEMES = ("circle", "circle-rotated", "torus:2", "euclid:2")


def suite_central_z(trials, seed):
    out = []
    for name in CENTRAL_SCHEMES:
        def body(name=name):
            s = builtin_scheme(name)
            Z = construct_Z(s)
            _expect(Z == NormalForm.z(s.chart), f"Z = {Z}")
            check_central(Z, rng=trial_rng(seed, f"central-{name}", 0), n_random=50)
            rng = trial_rng(seed, f"central-leibniz-{name}", 0)
            for probe in chart_generators(s.chart) + [random_nf(rng, s.chart) for _ in range(5)]:
                _expect(central_via_leibniz(s, probe).is_zero(), f"sum [{{q,A}},p] + [q,{{p,A}}] != 0 for A = {probe}")
            _expect(involution(Z) == -Z, "Z* != -Z")
            pad = s.with_triple(Triple(s.triples[0].q, FunElem.zero(s.chart), s.triples[0].w))
            _expect(construct_Z(pad) == Z, "redundant triple changes Z")

        out.append(_run_check(f"theorem1[{name}]", "Z = sum [q_i, p_i] is central, Z* = -Z, [A,B] = Z{A,B}", body))
    return out


def suite_heisenberg(trials, seed):
    out = []
    for n in (1, 2, 3):
        def body(n=n):
            v = heisenberg_check(n)
            _expect(v, v.witness)

        out.append(_run_check(f"heisenberg[n={n}]", "{x_i, p_j} = delta_ij I; [x_i, p_i] independent of i", body))
    return out


SUITES: dict[str, Callable] = {
    "lr-axioms": suite_lr_axioms,
    "dvf": suite_dvf,
    "z-divisibility": suite_z_divisibility,
    "theorem1": suite_central_z,
    "jordan": suite_jordan,
    "quantum-lr": suite_quantum_lr,
    "classical-hom": suite_classical_hom,
    "rep-interior": suite_rep_interior,
    "twist": suite_twist,
    "involution": suite_involution,
    "free-defect": suite_free_defect,
    "lie-env": suite_lie_env,
    "heisenberg": suite_heisenberg,
}

DEFAULT_TRIALS = {
    "lr-axioms": 400,
    "dvf": 400,
    "z-divisibility": 400,
    "jordan": 200,
    "quantum-lr": 200,
    "classical-hom": 400,
    "rep-interior": 100,
    "involution": 200,
    "free-defect": 500,
}


def resolved_trials(name: str, trials: int = None):
    """Trial count actually used; a per-suite map for ``all``."""
    if name == "all":
        return {key: resolved_trials(key, trials) for key in SUITES}
    return trials if trials is not None else DEFAULT_TRIALS.get(name, 1)


def run_suite(name: str, trials: int = None, seed: int = 0) -> list:
    if name == "all":
        records = []
        for key in SUITES:
            records.extend(run_suite(key, trials, seed))
        return records
    try:
        fn = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}, all") from None
    records = fn(resolved_trials(name, trials), seed)
    return sorted(records, key=lambda r: r.name)
