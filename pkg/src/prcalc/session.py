"""Script execution and scheme files.

A script runs top to bottom against one chart; each command produces one
output string.  ``quantum`` and ``spectrum`` print JSON, ``check`` prints a
full report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import dsl
from .errors import BadArgument, DSLSyntaxError, MalformedExpr
from .expr import normalize
from .normal_form import commutator, divide_z, poisson_bracket
from .quotients import RepConfig, classical_project, quantum_rep, spectrum_json
from .rings import ChartSpec
from .zcon import PartitionScheme, Triple, builtin_scheme, construct_Z

__all__ = ["Session", "rep_config", "load_scheme", "parse_scheme", "render_scheme"]


def _fraction(text, flag):
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise BadArgument(f"--{flag} expects a rational p/q, got {text!r}") from None


def _int(text, flag):
    try:
        return int(str(text))
    except ValueError:
        raise BadArgument(f"--{flag} expects an integer, got {text!r}") from None


def rep_config(flags: dict) -> RepConfig:
    kwargs = {"cutoff": _int(flags.get("cutoff", 8), "cutoff")}
    if "alpha" in flags:
        kwargs["alpha"] = _fraction(flags["alpha"], "alpha")
    if "hbar" in flags:
        kwargs["hbar"] = _fraction(flags["hbar"], "hbar")
    if "orientation" in flags:
        kwargs["orientation"] = int(_fraction(flags["orientation"], "orientation"))
    try:
        return RepConfig(**kwargs)
    except ValueError as exc:
        raise BadArgument(str(exc)) from None


# ---------------------------------------------------------------------------
# scheme files:  "chart torus:1" then one "q ; g ; w" line per triple
# ---------------------------------------------------------------------------


def parse_scheme(text: str, name: str = "", chart: ChartSpec = None) -> PartitionScheme:
    triples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("chart "):
            chart = ChartSpec.parse(line[len("chart "):].strip())
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 3:
            raise DSLSyntaxError("a triple line needs 'q ; g ; w'", lineno, 1, (";",))
        if chart is None:
            chart = dsl.infer_chart(text)
        try:
            q = dsl.as_fun(dsl.parse_expr(parts[0], chart), chart)
            g = dsl.as_fun(dsl.parse_expr(parts[1], chart), chart)
            w = dsl.as_vec(dsl.parse_expr(parts[2], chart), chart)
        except DSLSyntaxError as exc:
            raise DSLSyntaxError(exc.message, lineno, exc.column, exc.expected) from None
        except MalformedExpr as exc:
            raise DSLSyntaxError(str(exc), lineno, 1) from None
        triples.append(Triple(q, g, w))
    if chart is None:
        raise DSLSyntaxError("empty scheme", 1, 1, ("chart", "triple"))
    return PartitionScheme(chart, triples, name)


def render_scheme(s: PartitionScheme) -> str:
    lines = [f"chart {s.chart}"]
    for t in s.triples:
        lines.append(f"{t.q} ; {t.g} ; {dsl.render_vec(t.w)}")
    return "\n".join(lines) + "\n"


def load_scheme(ref: str, base: Path = None) -> PartitionScheme:
    """Builtin name or path to a scheme file."""
    try:
        return builtin_scheme(ref)
    except KeyError:
        pass
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    if not path.exists():
        raise BadArgument(f"unknown scheme {ref!r}: not circle, circle-rotated, torus:<n>, euclid:<n> or a file")
    return parse_scheme(path.read_text(encoding="utf-8"), name=path.name)


# ---------------------------------------------------------------------------


@dataclass
class Session:
    chart: ChartSpec
    env: dict = field(default_factory=dict)
    base: Path = None
    seed: int = 0
    failed: bool = False

    def nf(self, node):
        return normalize(dsl.lower(node, self.chart, self.env), self.chart)

    def execute(self, st) -> str | None:
        k = st.kind
        if k == "let":
            name, node = st.args
            self.env[name] = dsl.lower(node, self.chart, self.env)
            return None
        if k == "normalize":
            return str(self.nf(st.args[0]))
        if k == "bracket":
            return str(poisson_bracket(self.nf(st.args[0]), self.nf(st.args[1])))
        if k == "commutator":
            return str(commutator(self.nf(st.args[0]), self.nf(st.args[1])))
        if k == "divz":
            return str(divide_z(self.nf(st.args[0])))
        if k == "classical":
            return str(classical_project(self.nf(st.args[0])))
        if k == "quantum":
            mat = quantum_rep(self.nf(st.args[0]), rep_config(st.flags))
            return json.dumps(mat.to_json())
        if k == "spectrum":
            return json.dumps(spectrum_json(rep_config(st.flags)))
        if k == "construct-z":
            ref = st.flags.get("scheme", "circle")
            return str(construct_Z(load_scheme(str(ref), self.base)))
        if k == "check":
            from .report import build_report, dumps

            trials = st.flags.get("trials")
            rep = build_report(
                str(st.flags.get("suite", "all")),
                _int(trials, "trials") if trials is not None else None,
                _int(st.flags.get("seed", self.seed), "seed"),
                timing=bool(st.flags.get("timing", False)),
            )
            self.failed |= not rep["ok"]
            return dumps(rep).rstrip("\n")
        raise MalformedExpr(f"unknown statement {k}")

    def run(self, script) -> list:
        out = []
        for st in script.statements:
            res = self.execute(st)
            if res is not None:
                out.append(res)
        return out


def run_script(text: str, chart: ChartSpec = None, base: Path = None, seed: int = 0):
    """Parse and run; returns (outputs, any_check_failed)."""
    script = dsl.parse(text, chart)
    sess = Session(script.chart, base=base, seed=seed)
    return sess.run(script), sess.failed
