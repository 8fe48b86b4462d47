"""Machine-readable verification reports (JSON, schema-versioned)."""

from __future__ import annotations

import json

from . import __version__
from .suites import DEFAULT_CHARTS, resolved_trials, run_suite

SCHEMA = "prcalc.report/1"


def build_report(suite: str, trials, seed: int, timing: bool = False) -> dict:
    records = run_suite(suite, trials, seed)
    failed = sum(not r.ok for r in records)
    return {
        "schema": SCHEMA,
        "tool": "prcalc",
        "version": __version__,
        "suite": suite,
        "charts": [str(c) for c in DEFAULT_CHARTS],
        "seed": seed,
        "trials": resolved_trials(suite, trials),
        "passed": len(records) - failed,
        "failed": failed,
        "ok": failed == 0,
        "records": [r.to_json(timing) for r in records],
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
