"""prcalc: exact symbolic engine for the non-commutative Poisson algebra of a chart.

Functions and vector fields on R^n or T^n generate a model algebra with a
formal central ``z``; commutators equal ``z`` times Lie brackets, and the
``z = 0`` and ``z = -+i hbar`` quotients give the classical symbol calculus
and truncated quantum representations on the circle.
"""

__version__ = "0.1.0"

from . import errors  # noqa: E402
from .expr import normalize  # noqa: E402
from .lr import VecElem, rinehart, vec_apply, vec_bracket  # noqa: E402
from .normal_form import (  # noqa: E402
    NormalForm,
    commutator,
    divide_z,
    image_jordan,
    image_vec,
    involution,
    poisson_bracket,
)
from .rings import ChartSpec, FunElem  # noqa: E402
from .scalars import GaussRat  # noqa: E402


def fun_mul(a: FunElem, b: FunElem) -> FunElem:
    return a * b


def fun_derive(a: FunElem, i: int) -> FunElem:
    return a.derive(i)


def fun_conj(a: FunElem) -> FunElem:
    return a.conj()


__all__ = [
    "errors",
    "ChartSpec",
    "FunElem",
    "GaussRat",
    "VecElem",
    "NormalForm",
    "normalize",
    "vec_apply",
    "vec_bracket",
    "rinehart",
    "poisson_bracket",
    "commutator",
    "divide_z",
    "involution",
    "image_vec",
    "image_jordan",
    "fun_mul",
    "fun_derive",
    "fun_conj",
]
