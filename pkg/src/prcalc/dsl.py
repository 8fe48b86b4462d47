"""Expression DSL: tokenizer, recursive-descent parser, lowering and rendering.

Grammar::

    script    := { line }
    line      := "chart" CHART | "let" NAME "=" expr | command | expr
    command   := ("normalize" | "divz" | "classical") expr
               | ("bracket" | "commutator") expr "," expr
               | "quantum" expr flags | "construct-z" flags | "check" flags
               | "spectrum" flags
    expr      := term { ("+" | "-") term }
    term      := unary { ("*" | "o") unary }
    unary     := ("-" | "+") unary | power
    power     := atom [ "^" INT ]
    atom      := NUMBER | "i" | "z" | xK | dK | dtK | pK | NAME
               | ("sin" | "cos") "(" [INT "*"] tK ")" | "e" "(" INT {"," INT} ")"
               | "star" "(" expr ")" | "{" expr "," expr "}" | "(" expr ")"

``A o B`` is the Rinehart product: ``A`` must evaluate to a function and
``B`` to a vector field (sums of ``f*dK`` terms or brackets of fields).
Everywhere else ``dK`` and ``pK`` denote the momentum ``p_K``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import expr as E
from .errors import ChartMismatch, DSLSyntaxError, MalformedExpr, UnboundName
from .lr import VecElem, rinehart, vec_bracket
from .rings import ChartSpec, FunElem
from .scalars import ONE, GaussRat, I

__all__ = ["Script", "Statement", "parse", "parse_expr", "render", "lower", "as_fun", "as_vec", "infer_chart"]

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<comment>\#[^\n]*)
  | (?P<nl>\n)
  | (?P<flag>--[A-Za-z][\w-]*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<ident>construct-z|[A-Za-z_]\w*)
  | (?P<op>[-+*^(){},;=:])
    """,
    re.VERBOSE,
)

_RAW = re.compile(r"[^\s;]+")

COMMANDS = ("normalize", "bracket", "commutator", "divz", "classical", "quantum", "construct-z", "check", "spectrum")
ATOM_START = ("NUMBER", "NAME", "i", "z", "(", "{", "-", "+", "sin", "cos", "e", "star")


@dataclass
class Token:
    kind: str  # num, ident, op, flag, nl, eof
    text: str
    line: int
    col: int


def tokenize(text: str):
    out = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if out and out[-1].kind == "flag" and kind not in ("ws", "nl", "comment", "flag"):
            # flag values are raw words: scheme paths, p/q rationals, negative numbers
            m = _RAW.match(text, pos)
            kind = "word"
        if kind == "nl":
            out.append(Token("nl", "\n", line, pos - line_start + 1))
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# ---------------------------------------------------------------------------
# syntax tree (chart-free) and parser
# ---------------------------------------------------------------------------


@dataclass
class Statement:
    kind: str
    args: tuple = ()
    flags: dict = field(default_factory=dict)
    line: int = 0


@dataclass
class Script:
    chart: Optional[ChartSpec]
    statements: list


_IDX = re.compile(r"^(x|t|d|dt|p)(\d+)$")


class _Parser:
    def __init__(self, tokens, chart: ChartSpec = None, names=()):
        self.toks = tokens
        self.pos = 0
        self.chart = chart
        self.names = set(names)

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg, expected=()):
        t = self.tok
        raise DSLSyntaxError(msg, t.line, t.col, expected)

    def accept(self, text) -> bool:
        if self.tok.kind in ("op", "ident") and self.tok.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}", (text,))

    def expect_int(self) -> int:
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "num" or "/" in self.tok.text:
            self.fail("expected an integer", ("INT",))
        return sign * int(self.advance().text)

    def at_end_of_statement(self):
        return self.tok.kind in ("nl", "eof") or (self.tok.kind == "op" and self.tok.text == ";")

    # expressions
    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            rhs = self.term()
            node = ("add", node, rhs) if op == "+" else ("add", node, ("neg", rhs))
        return node

    def term(self):
        node = self.unary()
        while True:
            if self.accept("*"):
                node = ("mul", node, self.unary())
            elif self.tok.kind == "ident" and self.tok.text == "o":
                self.advance()
                node = ("rin", node, self.unary())
            else:
                return node

    def unary(self):
        if self.accept("-"):
            return ("neg", self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.accept("^"):
            if self.tok.kind != "num" or "/" in self.tok.text:
                self.fail("exponent must be a natural number", ("INT",))
            node = ("pow", node, int(self.advance().text))
        return node

    def _index(self, letter, idx, t):
        if self.chart is not None and not 1 <= idx <= self.chart.dim:
            raise DSLSyntaxError(f"index {letter}{idx} outside chart {self.chart}", t.line, t.col)
        if self.chart is not None:
            if letter == "x" and self.chart.is_torus:
                raise ChartMismatch(self.chart, "euclid (x coordinates)")
            if letter in ("t", "dt") and not self.chart.is_torus:
                raise ChartMismatch(self.chart, "torus (angle coordinates)")

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return ("num", GaussRat(Fraction(t.text)))
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "op" and t.text == "{":
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("}")
            return ("br", left, right)
        if t.kind != "ident":
            found = t.text or "end of input"
            self.fail(f"unexpected {found!r}", ATOM_START)
        name = t.text
        self.advance()
        if name == "i":
            return ("num", I)
        if name == "z":
            return ("z",)
        if name in ("sin", "cos"):
            self.expect("(")
            mult = 1
            if self.tok.kind == "num" or (self.tok.kind == "op" and self.tok.text == "-"):
                if self.accept("-"):
                    mult = -1
                if self.tok.kind == "num":
                    mult *= self.expect_int()
                    self.expect("*")
            at = self.tok
            m = _IDX.match(at.text) if at.kind == "ident" else None
            if not m or m.group(1) != "t":
                self.fail("expected an angle variable tK", ("tK",))
            self.advance()
            idx = int(m.group(2))
            self._index("t", idx, at)
            self.expect(")")
            return (name, idx, mult)
        if name == "e":
            self.expect("(")
            ks = [self.expect_int()]
            while self.accept(","):
                ks.append(self.expect_int())
            self.expect(")")
            if self.chart is not None:
                if not self.chart.is_torus:
                    raise ChartMismatch(self.chart, "torus (Fourier mode)")
                if len(ks) != self.chart.dim:
                    raise DSLSyntaxError(f"e(...) needs {self.chart.dim} frequencies", t.line, t.col)
            return ("e", tuple(ks))
        if name == "star":
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return ("star", inner)
        m = _IDX.match(name)
        if m:
            letter, idx = m.group(1), int(m.group(2))
            self._index(letter, idx, t)
            if letter == "x":
                return ("x", idx)
            if letter == "t":
                raise DSLSyntaxError("angle tK only appears inside sin(...) or cos(...)", t.line, t.col, ("sin", "cos"))
            return ("field", idx)
        if name in self.names:
            return ("var", name)
        raise UnboundName(name, t.line, t.col)

    # statements
    def flags(self):
        out = {}
        while self.tok.kind == "flag":
            key = self.advance().text[2:]
            if self.at_end_of_statement() or self.tok.kind == "flag":
                out[key] = True
                continue
            val = []
            while not self.at_end_of_statement() and self.tok.kind != "flag":
                val.append(self.advance().text)
            out[key] = "".join(val)
        return out

    def statement(self):
        t = self.tok
        line = t.line
        if t.kind == "ident" and t.text == "chart":
            self.advance()
            spec = self.tok
            expected = ("euclid:<n>", "torus:<n>", "circle")
            if spec.kind != "ident" or spec.text not in ("euclid", "torus", "circle"):
                self.fail("expected a chart", expected)
            self.advance()
            if spec.text == "circle":
                chart = ChartSpec.torus(1)
            else:
                self.expect(":")
                dim = self.expect_int()
                if dim < 1:
                    raise DSLSyntaxError("chart dimension must be positive", spec.line, spec.col, expected)
                chart = ChartSpec(spec.text, dim)
            return Statement("chart", (chart,), line=line)
        if t.kind == "ident" and t.text == "let":
            self.advance()
            nt = self.tok
            if nt.kind != "ident" or _IDX.match(nt.text) or nt.text in ("i", "z", "o", "e", "sin", "cos", "star"):
                self.fail("expected a name to bind", ("NAME",))
            self.advance()
            self.expect("=")
            body = self.expr()
            self.names.add(nt.text)
            return Statement("let", (nt.text, body), line=line)
        if t.kind == "ident" and t.text in COMMANDS:
            cmd = self.advance().text
            if cmd in ("construct-z", "check", "spectrum"):
                return Statement(cmd, (), self.flags(), line)
            first = self.expr()
            if cmd in ("bracket", "commutator"):
                self.expect(",")
                return Statement(cmd, (first, self.expr()), line=line)
            return Statement(cmd, (first,), self.flags(), line)
        return Statement("normalize", (self.expr(),), line=line)

    def script(self):
        stmts = []
        chart = self.chart
        while self.tok.kind != "eof":
            if self.tok.kind == "nl" or (self.tok.kind == "op" and self.tok.text == ";"):
                self.advance()
                continue
            st = self.statement()
            if st.kind == "chart":
                if chart is not None and st.args[0] != chart:
                    raise ChartMismatch(chart, st.args[0])
                chart = self.chart = st.args[0]
            else:
                stmts.append(st)
            if not self.at_end_of_statement():
                self.fail(f"unexpected {self.tok.text!r} after statement", ("newline", ";", "+", "-", "*", "o"))
        return Script(chart, stmts)


def parse(text: str, chart: ChartSpec = None) -> Script:
    """Parse a script; the chart comes from a ``chart`` line, the argument, or inference."""
    toks = tokenize(text)
    script = _Parser(toks, chart).script()
    if script.chart is None:
        script.chart = infer_chart(text)
        # re-parse so index range checks run against the inferred chart
        script = _Parser(tokenize(text), script.chart).script()
    return script


def parse_expr(text: str, chart: ChartSpec = None, env: dict = None):
    """Parse one expression and lower it to a PExpr."""
    chart = chart or infer_chart(text)
    p = _Parser(tokenize(text), chart, names=(env or {}).keys())
    node = p.expr()
    if p.tok.kind != "eof":
        p.fail(f"unexpected {p.tok.text!r}", ("+", "-", "*", "o", "end of input"))
    return lower(node, chart, env or {})


def infer_chart(text: str) -> ChartSpec:
    torus = bool(re.search(r"\b(dt\d+|t\d+|sin|cos|e\s*\()", text))
    dim = 1
    for m in re.finditer(r"\b(?:x|t|d|dt|p)(\d+)\b", text):
        dim = max(dim, int(m.group(1)))
    for m in re.finditer(r"\be\s*\(([^)]*)\)", text):
        dim = max(dim, m.group(1).count(",") + 1)
    return ChartSpec.torus(dim) if torus else ChartSpec.euclid(dim)


# ---------------------------------------------------------------------------
# lowering to expression trees
# ---------------------------------------------------------------------------


def lower(node, chart: ChartSpec, env: dict):
    kind = node[0]
    if kind == "num":
        return E.ScalarLeaf(node[1])
    if kind == "z":
        return E.ZLeaf()
    if kind == "x":
        return E.FunLeaf(FunElem.var(chart, node[1]))
    if kind in ("sin", "cos"):
        maker = FunElem.sin if kind == "sin" else FunElem.cos
        return E.FunLeaf(maker(chart, node[1], node[2]))
    if kind == "e":
        return E.FunLeaf(FunElem.fourier(chart, node[1]))
    if kind == "field":
        return E.VecLeaf(VecElem.frame(chart, node[1]))
    if kind == "var":
        if node[1] not in env:
            raise UnboundName(node[1])
        return env[node[1]]
    if kind == "add":
        return E.Sum((lower(node[1], chart, env), lower(node[2], chart, env)))
    if kind == "neg":
        return E.neg(lower(node[1], chart, env))
    if kind == "mul":
        return E.Prod((lower(node[1], chart, env), lower(node[2], chart, env)))
    if kind == "pow":
        base = lower(node[1], chart, env)
        if node[2] == 0:
            return E.ScalarLeaf(ONE)
        return E.Prod((base,) * node[2]) if node[2] > 1 else base
    if kind == "br":
        return E.Bracket(lower(node[1], chart, env), lower(node[2], chart, env))
    if kind == "star":
        return E.Star(lower(node[1], chart, env))
    if kind == "rin":
        f = as_fun(lower(node[1], chart, env), chart)
        v = as_vec(lower(node[2], chart, env), chart)
        return E.JordanLeaf(f, v)
    raise MalformedExpr(f"unknown syntax node {kind}")


def as_fun(e, chart: ChartSpec) -> FunElem:
    """Evaluate an expression tree made only of scalars and functions."""
    if isinstance(e, E.ScalarLeaf):
        return FunElem.const(chart, e.value)
    if isinstance(e, E.FunLeaf):
        return e.f
    if isinstance(e, E.Sum):
        out = FunElem.zero(chart)
        for c in e.children:
            out = out + as_fun(c, chart)
        return out
    if isinstance(e, E.Prod):
        out = FunElem.const(chart)
        for c in e.children:
            out = out * as_fun(c, chart)
        return out
    if isinstance(e, E.Star):
        return as_fun(e.child, chart).conj()
    raise MalformedExpr("left operand of 'o' must be a function")


def as_vec(e, chart: ChartSpec) -> VecElem:
    """Evaluate an expression tree as a vector field (function coefficients times frame fields)."""
    if isinstance(e, E.VecLeaf):
        return e.v
    if isinstance(e, E.JordanLeaf):
        return rinehart(e.f, e.v)
    if isinstance(e, E.Sum):
        out = VecElem.zero(chart)
        for c in e.children:
            out = out + as_vec(c, chart)
        return out
    if isinstance(e, E.Bracket):
        return vec_bracket(as_vec(e.left, chart), as_vec(e.right, chart))
    if isinstance(e, E.Prod):
        fun = FunElem.const(chart)
        field = None
        for c in e.children:
            try:
                fun = fun * as_fun(c, chart)
                continue
            except MalformedExpr:
                pass
            if field is not None:
                raise MalformedExpr("product of two vector fields is not a vector field")
            field = as_vec(c, chart)
        if field is None:
            raise MalformedExpr("right operand of 'o' must be a vector field")
        return rinehart(fun, field)
    raise MalformedExpr("right operand of 'o' must be a vector field")


# ---------------------------------------------------------------------------
# rendering back to DSL text
# ---------------------------------------------------------------------------


def _field_name(chart, i):
    return f"dt{i}" if chart.is_torus else f"d{i}"


def render_vec(v: VecElem) -> str:
    parts = [f"({c})*{_field_name(v.chart, i)}" for i, c in enumerate(v.coeffs, start=1) if c]
    return " + ".join(parts) if parts else f"0*{_field_name(v.chart, 1)}"


def render(e) -> str:
    """Inverse of parse_expr up to normal-form equality."""
    if isinstance(e, E.ScalarLeaf):
        return f"({e.value})"
    if isinstance(e, E.FunLeaf):
        return f"({e.f})"
    if isinstance(e, E.ZLeaf):
        return "z"
    if isinstance(e, E.VecLeaf):
        parts = [f"({c}) o {_field_name(e.v.chart, i)}" for i, c in enumerate(e.v.coeffs, start=1) if c]
        return "(" + (" + ".join(parts) if parts else f"0 o {_field_name(e.v.chart, 1)}") + ")"
    if isinstance(e, E.JordanLeaf):
        return f"(({e.f}) o ({render_vec(e.v)}))"
    if isinstance(e, E.Sum):
        return "(" + " + ".join(render(c) for c in e.children) + ")" if e.children else "0"
    if isinstance(e, E.Prod):
        return "(" + " * ".join(render(c) for c in e.children) + ")"
    if isinstance(e, E.Bracket):
        return "{" + render(e.left) + ", " + render(e.right) + "}"
    if isinstance(e, E.Star):
        return f"star({render(e.child)})"
    raise MalformedExpr(f"cannot render {e!r}")
