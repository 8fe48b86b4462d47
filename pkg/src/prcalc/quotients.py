"""The z = 0 and z = -+i*hbar quotients.

Classical side: commutative symbols ``sum f(x) p^alpha`` on the cotangent
bundle with the canonical bracket.  Quantum side: exact truncated-Fourier
matrices on the circle, basis ``e_n = exp(i n theta)`` for ``|n| <= N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ChartMismatch, CutoffTooSmall, WrongChart
from .normal_form import NormalForm, involution
from .rings import ChartSpec, FunElem
from .scalars import ZERO, GaussRat, as_gauss, format_fraction
from .verdict import FAIL, PASS, Verdict
from . import conventions

__all__ = [
    "ClassicalSymbol",
    "classical_project",
    "classical_bracket",
    "RepConfig",
    "OpMatrix",
    "quantum_rep",
    "rep_interior_check",
    "adjoint_check",
    "twist_spectrum",
    "twist_equivalent",
]


# ---------------------------------------------------------------------------
# classical symbols
# ---------------------------------------------------------------------------


class ClassicalSymbol:
    __slots__ = ("chart", "terms")

    def __init__(self, chart: ChartSpec, terms=None):
        self.chart = chart
        self.terms = {tuple(a): f for a, f in (terms or {}).items() if f}

    @classmethod
    def from_fun(cls, f: FunElem):
        return cls(f.chart, {(0,) * f.chart.dim: f})

    @classmethod
    def momentum(cls, chart, i):
        a = [0] * chart.dim
        a[i - 1] = 1
        return cls(chart, {tuple(a): FunElem.const(chart)})

    def _same(self, other):
        if self.chart != other.chart:
            raise ChartMismatch(self.chart, other.chart)

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for a, f in other.terms.items():
            out[a] = out[a] + f if a in out else f
        return ClassicalSymbol(self.chart, out)

    def __neg__(self):
        return ClassicalSymbol(self.chart, {a: -f for a, f in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ClassicalSymbol):
            return ClassicalSymbol(self.chart, {a: f.scale(other) for a, f in self.terms.items()})
        self._same(other)
        out: dict = {}
        for a, f in self.terms.items():
            for b, g in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out[key] + f * g if key in out else f * g
        return ClassicalSymbol(self.chart, out)

    def d_x(self, i):
        return ClassicalSymbol(self.chart, {a: f.derive(i) for a, f in self.terms.items()})

    def d_p(self, i):
        out = {}
        for a, f in self.terms.items():
            if a[i - 1]:
                b = list(a)
                b[i - 1] -= 1
                out[tuple(b)] = f.scale(a[i - 1])
        return ClassicalSymbol(self.chart, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, ClassicalSymbol):
            return self.chart == other.chart and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.chart, frozenset(self.terms.items())))

    def to_normal_form(self) -> NormalForm:
        """Left-ordered lift back into the model algebra (z-free)."""
        return NormalForm(self.chart, {(a, 0): f for a, f in self.terms.items()})

    def __str__(self):
        return str(self.to_normal_form())

    __repr__ = __str__


def classical_project(a: NormalForm) -> ClassicalSymbol:
    return ClassicalSymbol(a.chart, {alpha: f for (alpha, k), f in a.terms.items() if k == 0})


def classical_bracket(a: ClassicalSymbol, b: ClassicalSymbol) -> ClassicalSymbol:
    """sum_i (da/dp_i db/dx_i - da/dx_i db/dp_i), so that {p_i, x_i} = 1."""
    a._same(b)
    out = ClassicalSymbol(a.chart)
    for i in range(1, a.chart.dim + 1):
        out = out + a.d_p(i) * b.d_x(i) - a.d_x(i) * b.d_p(i)
    return out


# ---------------------------------------------------------------------------
# quantum representation on the circle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RepConfig:
    cutoff: int
    alpha: Fraction = Fraction(0)
    hbar: Fraction = Fraction(1)
    orientation: int = conventions.DEFAULT_ORIENTATION

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "hbar", Fraction(self.hbar))
        if not isinstance(self.cutoff, int) or self.cutoff < 1:
            raise ValueError("cutoff must be a positive integer")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    @property
    def modes(self):
        return range(-self.cutoff, self.cutoff + 1)

    def momentum_eigenvalue(self, n: int) -> Fraction:
        return -self.orientation * self.hbar * (n + self.alpha)

    def z_value(self) -> GaussRat:
        return GaussRat(0, self.orientation * self.hbar)


class OpMatrix:
    """Sparse exact matrix indexed by mode numbers ``-N..N``."""

    __slots__ = ("cutoff", "entries")

    def __init__(self, cutoff: int, entries=None):
        self.cutoff = cutoff
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @property
    def size(self):
        return 2 * self.cutoff + 1

    def __getitem__(self, rc):
        return self.entries.get(rc, ZERO)

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return OpMatrix(self.cutoff, out)

    def __neg__(self):
        return OpMatrix(self.cutoff, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_gauss(c)
        return OpMatrix(self.cutoff, {k: v * c for k, v in self.entries.items()})

    def __matmul__(self, other):
        by_row: dict = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict = {}
        for (r, m), v in self.entries.items():
            for c, w in by_row.get(m, ()):
                key = (r, c)
                out[key] = out[key] + v * w if key in out else v * w
        return OpMatrix(self.cutoff, out)

    def dagger(self):
        return OpMatrix(self.cutoff, {(c, r): v.conjugate() for (r, c), v in self.entries.items()})

    def block(self, radius: int) -> "OpMatrix":
        return OpMatrix(
            self.cutoff, {(r, c): v for (r, c), v in self.entries.items() if abs(r) <= radius and abs(c) <= radius}
        )

    def bandwidth(self):
        return max((abs(r - c) for r, c in self.entries), default=0)

    def __eq__(self, other):
        return isinstance(other, OpMatrix) and self.cutoff == other.cutoff and self.entries == other.entries

    def to_rows(self):
        modes = range(-self.cutoff, self.cutoff + 1)
        return [[self[(r, c)] for c in modes] for r in modes]

    def to_json(self):
        """Row-major array of exact entry strings."""
        return [[str(v) for v in row] for row in self.to_rows()]


def fourier_degree(a: NormalForm) -> int:
    return max((f.degree() for f in a.terms.values()), default=0)


def quantum_rep(a: NormalForm, cfg: RepConfig) -> OpMatrix:
    """pi(f p^alpha z^k) = pi(f) pi(p)^alpha pi(z)^k with truncated shifts."""
    if a.chart != ChartSpec.torus(1):
        raise WrongChart(f"quantum representation needs torus:1, got {a.chart}")
    if fourier_degree(a) >= cfg.cutoff:
        raise CutoffTooSmall(f"Fourier degree {fourier_degree(a)} needs cutoff > degree, got {cfg.cutoff}")
    N = cfg.cutoff
    zval = cfg.z_value()
    out: dict = {}
    for ((alpha,), k), f in a.terms.items():
        zk = zval**k
        for (freq,), c in f.terms.items():
            for n in cfg.modes:
                m = n + freq
                if abs(m) > N:
                    continue
                v = c * zk * (cfg.momentum_eigenvalue(n) ** alpha)
                key = (m, n)
                out[key] = out[key] + v if key in out else v
    return OpMatrix(N, out)


def interior_radius(cfg: RepConfig, *elems: NormalForm) -> int:
    K = max((fourier_degree(e) for e in elems), default=0)
    if cfg.cutoff <= 2 * K:
        raise CutoffTooSmall(f"interior check needs cutoff > 2*{K}, got {cfg.cutoff}")
    return cfg.cutoff - 2 * K


def _first_violation(diff: OpMatrix, radius: int):
    bad = [rc for rc in diff.entries if abs(rc[0]) <= radius and abs(rc[1]) <= radius]
    return min(bad) if bad else None


def rep_interior_check(a: NormalForm, b: NormalForm, cfg: RepConfig) -> Verdict:
    """pi(A) pi(B) == pi(A*B) on the block |n| <= N - 2K."""
    radius = interior_radius(cfg, a, b)
    diff = quantum_rep(a, cfg) @ quantum_rep(b, cfg) - quantum_rep(a * b, cfg)
    bad = _first_violation(diff, radius)
    if bad is not None:
        return Verdict("rep-interior", FAIL, witness=f"entry {bad} = {diff[bad]}", data={"radius": radius})
    return Verdict("rep-interior", PASS, data={"radius": radius})


def adjoint_check(a: NormalForm, cfg: RepConfig) -> Verdict:
    """pi(A*) == pi(A)^dagger on the interior block."""
    radius = interior_radius(cfg, a)
    diff = quantum_rep(involution(a), cfg) - quantum_rep(a, cfg).dagger()
    bad = _first_violation(diff, radius)
    if bad is not None:
        return Verdict("adjoint", FAIL, witness=f"entry {bad} = {diff[bad]}", data={"radius": radius})
    return Verdict("adjoint", PASS, data={"radius": radius})


def twist_spectrum(cfg: RepConfig) -> list:
    return sorted(cfg.momentum_eigenvalue(n) for n in cfg.modes)


def twist_equivalent(a: RepConfig, b: RepConfig) -> bool:
    """Equal hbar and spectra that coincide after an integer shift of the mode window."""
    if a.hbar != b.hbar or a.cutoff != b.cutoff:
        return False
    target = twist_spectrum(b)
    sign = -a.orientation
    for m in range(-2 * a.cutoff - 1, 2 * a.cutoff + 2):
        shifted = sorted(sign * a.hbar * (n + m + a.alpha) for n in a.modes)
        if shifted == target:
            return True
    return False


def spectrum_json(cfg: RepConfig) -> list:
    return [format_fraction(x) for x in twist_spectrum(cfg)]
