"""``prcalc`` command line.

Exit codes: 0 success / all checks pass, 1 a check failed or the engine
refused the input (e.g. not z-divisible), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__, dsl
from .errors import BadArgument, ChartMismatch, DSLSyntaxError, PrcalcError, UnboundName, UnknownSuite
from .rings import ChartSpec
from .session import Session, run_script

EXPR_COMMANDS = ("normalize", "divz", "classical")
PAIR_COMMANDS = ("bracket", "commutator")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _chart(text):
    try:
        return ChartSpec.parse(text)
    except (ValueError, KeyError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _default_seed():
    raw = os.environ.get("PRCALC_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"PRCALC_SEED must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="prcalc", description="Exact non-commutative Poisson algebra calculator.")
    ap.add_argument("--version", action="version", version=f"prcalc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    expr_help = {
        "normalize": "print the normal form of an expression",
        "divz": "divide a normal form by z (fails unless every term carries z)",
        "classical": "project to the commutative symbol algebra (z = 0)",
    }
    for name in EXPR_COMMANDS:
        p = sub.add_parser(name, help=expr_help[name])
        p.add_argument("expr", nargs="+")
        p.add_argument("--chart", type=_chart)
    for name in PAIR_COMMANDS:
        p = sub.add_parser(name, help=f"{name} of two expressions")
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("--chart", type=_chart)

    p = sub.add_parser("quantum", help="matrix of an element in the truncated circle representation")
    p.add_argument("expr", nargs="+")
    p.add_argument("--chart", type=_chart, default=ChartSpec.torus(1))
    _rep_flags(p)

    p = sub.add_parser("spectrum", help="spectrum of the twisted momentum operator")
    _rep_flags(p)

    p = sub.add_parser("construct-z", help="sum of commutators of a partition scheme")
    p.add_argument("--scheme", default="circle", help="builtin name (circle, circle-rotated, torus:n, euclid:n) or file")

    p = sub.add_parser("check", help="run a seeded property suite and emit a JSON report")
    p.add_argument("--suite", default="all")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", type=Path)
    p.add_argument("--timing", action="store_true", help="include per-record elapsed time (not byte-stable)")

    p = sub.add_parser("run", help="execute a script file ('-' for stdin)")
    p.add_argument("script")
    p.add_argument("--chart", type=_chart)
    p.add_argument("--seed", type=int)
    return ap


def _rep_flags(p):
    p.add_argument("--cutoff", default="8")
    p.add_argument("--alpha", default="0")
    p.add_argument("--hbar", default="1")
    p.add_argument("--orientation", default=None)


def _rep_dict(args):
    flags = {"cutoff": args.cutoff, "alpha": args.alpha, "hbar": args.hbar}
    if args.orientation is not None:
        flags["orientation"] = args.orientation
    return flags


def _single(text, chart, kind, flags=None):
    """Run one command through the same path as a script statement."""
    chart = chart or dsl.infer_chart(text)
    script = dsl.parse(text, chart)
    if len(script.statements) != 1:
        raise DSLSyntaxError("expected exactly one expression", 1, 1)
    st = script.statements[0]
    st.kind = kind
    if flags:
        st.flags = flags
    return Session(chart).execute(st)


def _dispatch(args, out) -> int:
    cmd = args.command
    if cmd in EXPR_COMMANDS:
        print(_single(" ".join(args.expr), args.chart, cmd), file=out)
        return 0
    if cmd in PAIR_COMMANDS:
        chart = args.chart or dsl.infer_chart(f"{args.left}\n{args.right}")
        text = f"{cmd} {args.left}, {args.right}"
        script = dsl.parse(text, chart)
        print(Session(chart).execute(script.statements[0]), file=out)
        return 0
    if cmd == "quantum":
        print(_single(" ".join(args.expr), args.chart, "quantum", _rep_dict(args)), file=out)
        return 0
    if cmd == "spectrum":
        st = dsl.Statement("spectrum", (), _rep_dict(args))
        print(Session(ChartSpec.torus(1)).execute(st), file=out)
        return 0
    if cmd == "construct-z":
        st = dsl.Statement("construct-z", (), {"scheme": args.scheme})
        print(Session(ChartSpec.torus(1), base=Path.cwd()).execute(st), file=out)
        return 0
    if cmd == "check":
        from .report import build_report, dumps

        seed = args.seed if args.seed is not None else _default_seed()
        rep = build_report(args.suite, args.trials, seed, timing=args.timing)
        text = dumps(rep)
        if args.out:
            args.out.write_text(text, encoding="utf-8")
        else:
            out.write(text)
        return 0 if rep["ok"] else 1
    if cmd == "run":
        if args.script == "-":
            text, base = sys.stdin.read(), Path.cwd()
        else:
            path = Path(args.script)
            try:
                text = path.read_text(encoding="utf-8")
            except OSError as exc:
                raise _UsageError(f"cannot read script: {exc}") from None
            base = path.parent
        seed = args.seed if args.seed is not None else _default_seed()
        results, failed = run_script(text, args.chart, base=base, seed=seed)
        for r in results:
            print(r, file=out)
        return 1 if failed else 0
    raise _UsageError(f"unknown command {cmd}")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args, out)
    except _UsageError as exc:
        print(exc, file=err)
        return 2
    except (BadArgument, DSLSyntaxError, UnboundName, ChartMismatch, UnknownSuite) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 2
    except PrcalcError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
