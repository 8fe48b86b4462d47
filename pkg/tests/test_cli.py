import io
import json
import subprocess
import sys

from prcalc.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_expression_commands():
    assert run("normalize", "d1*x1") == (0, "x1*p1 + z\n", "")
    assert run("bracket", "x1", "d1")[1] == "-1\n"
    assert run("commutator", "d1", "x1^2")[1] == "2*x1*z\n"
    assert run("divz", "z*x1 + z^2")[1] == "x1 + z\n"
    assert run("classical", "d1*x1^2")[1] == "x1^2*p1\n"
    assert run("normalize", "e(1)*e(-1)")[1] == "1\n"


def test_chart_flag():
    code, out, _ = run("normalize", "x1", "--chart", "euclid:3")
    assert code == 0 and out == "x1\n"
    code, _, err = run("normalize", "x3", "--chart", "euclid:2")
    assert code == 2 and "outside chart" in err


def test_quantum_and_spectrum():
    code, out, _ = run("quantum", "e(1)", "--cutoff", "2")
    assert code == 0
    rows = json.loads(out)
    assert rows == [["1" if r == c + 1 else "0" for c in range(5)] for r in range(5)]
    code, out, _ = run("spectrum", "--cutoff", "2", "--alpha", "1/3", "--hbar", "2")
    assert json.loads(out) == ["-10/3", "-4/3", "2/3", "8/3", "14/3"]
    assert run("quantum", "d1", "--cutoff", "1", "--hbar", "x")[0] == 2


def test_construct_z(tmp_path, monkeypatch):
    for name in ("circle", "circle-rotated", "torus:2", "euclid:2"):
        assert run("construct-z", "--scheme", name) == (0, "z\n", "")
    f = tmp_path / "c.scheme"
    f.write_text("chart circle\n-sin(t1) ; cos(t1) ; dt1\ncos(t1) ; sin(t1) ; dt1\n")
    assert run("construct-z", "--scheme", str(f))[1] == "z\n"
    f.write_text("chart circle\n-sin(t1) ; cos(t1) ; dt1\n")
    code, _, err = run("construct-z", "--scheme", str(f))
    assert code == 1 and "CertificateFailed" in err
    assert run("construct-z", "--scheme", "nowhere")[0] == 2


def test_exit_codes():
    assert run("divz", "x1")[0] == 1
    assert run("normalize", "x1 +")[0] == 2
    assert run("normalize", "foo")[0] == 2
    assert run("bogus")[0] == 2
    assert run()[0] == 2
    code, out, err = run("check", "--suite", "unknown")
    assert code == 2 and "UnknownSuite" in err and out == ""


def test_syntax_error_message_has_position():
    code, _, err = run("normalize", "x1 + * x2")
    assert code == 2 and "1:6" in err and "expected one of" in err


def test_check_report_shape(tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run("check", "--suite", "twist", "--seed", "3", "--out", str(dest))
    assert code == 0 and out == ""
    rep = json.loads(dest.read_text())
    assert rep["schema"] == "prcalc.report/1"
    assert rep["suite"] == "twist" and rep["seed"] == 3 and rep["ok"]
    assert rep["passed"] == len(rep["records"]) == 25 and rep["failed"] == 0
    names = [r["name"] for r in rep["records"]]
    assert names == sorted(names)
    assert all(r["elapsed_ms"] is None for r in rep["records"])


def test_check_timing_flag():
    code, out, _ = run("check", "--suite", "heisenberg", "--timing")
    assert all(isinstance(r["elapsed_ms"], float) for r in json.loads(out)["records"])


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("PRCALC_SEED", "17")
    _, out, _ = run("check", "--suite", "jordan", "--trials", "4")
    assert json.loads(out)["seed"] == 17
    monkeypatch.setenv("PRCALC_SEED", "nope")
    assert run("check", "--suite", "jordan", "--trials", "1")[0] == 2


def test_check_is_byte_deterministic():
    a = run("check", "--suite", "z-divisibility", "--trials", "30", "--seed", "5")
    b = run("check", "--suite", "z-divisibility", "--trials", "30", "--seed", "5")
    assert a == b and a[0] == 0
    c = run("check", "--suite", "z-divisibility", "--trials", "30", "--seed", "6")
    assert c[1] != a[1]


def test_run_script(tmp_path):
    script = tmp_path / "demo.prc"
    (tmp_path / "mine.scheme").write_text("chart euclid:1\n-x1 ; 1 ; d1\n")
    script.write_text(
        "# demo\nchart euclid:2\nlet A = x1^2*d2\nbracket A, x2 o d1\nconstruct-z --scheme mine.scheme\n"
        "check --suite heisenberg\n"
    )
    code, out, _ = run("run", str(script))
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "x1^2*p1 - 2*x1*x2*p2"
    assert lines[1] == "z"
    assert json.loads("\n".join(lines[2:]))["ok"]
    assert run("run", str(tmp_path / "missing.prc"))[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "prcalc.cli", "normalize", "d1*x1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "x1*p1 + z\n"
