"""Built-in catalogue of test integrands with analytic metadata.

Each entry is an even, real-valued function together with its decay
envelope, its status under the mass conditions (does (1/T) int |t f| tend
to zero, stay bounded, or diverge), and whatever closed forms exist for
the partial integral, the weighted mass M(T), the weighted tail Q(T), the
sinc-kernel mean and the transform limit.  The closed forms back the test
oracles; all pipeline computations go through the quadrature engine.

The catalogue deliberately spans: compact support (box), Schwartz decay
(gaussian), integrable-but-slow (exp_abs), mass-bounded but not integrable
(shifted_reciprocal), mass-vanishing but not integrable (log_damped), a
condition violator (constant_one), and the zero function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special

from .errors import UnknownFunctionError

__all__ = [
    "TestFunction",
    "DecayEnvelope",
    "ClosedForms",
    "get",
    "names",
    "list_functions",
]


@dataclass(frozen=True)
class DecayEnvelope:
    """Monotone bound E with |f(t)| <= E(|t|) for |t| >= valid_from.

    tail_over_t(T) returns (integral of E(u)/u over u > T, exact_flag).
    When the flag is False the value is a rigorous upper bound rather than
    the exact integral.  ``saturates`` records that E coincides with |f|
    beyond valid_from, which is what lets an exact tail form be added to
    an integral's value instead of its error budget.
    """

    valid_from: float
    bound: Callable[[np.ndarray], np.ndarray]
    tail_over_t: Callable[[float], tuple[float, bool]]
    saturates: bool = True


@dataclass(frozen=True)
class ClosedForms:
    """Optional exact expressions, each with a validity note."""

    partial_integral: Callable[[float, float], complex] | None = None  # (x, T)
    partial_integral_domain: str = ""
    weighted_mass: Callable[[float], float] | None = None  # M(T)
    tail_weight: Callable[[float], float] | None = None  # Q(T)
    lebesgue_mean: Callable[[float, float], complex] | None = None  # (x, h)
    transform_limit: Callable[[float], complex] | None = None
    transform_limit_domain: str = ""


@dataclass(frozen=True)
class TestFunction:
    """A named integrand f: R -> C with its analytic metadata."""

    name: str
    formula: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    support_radius: float  # math.inf when not compactly supported
    envelope: DecayEnvelope | None
    globally_integrable: bool
    condition_class: str  # vanishing-M | bounded-M | divergent-M
    # discontinuities and kinks; quadrature panels always break here
    jump_points: tuple[float, ...] = ()
    closed_forms: ClosedForms = field(default_factory=ClosedForms)
    # x-values where the partial integral has no limit; None means nowhere
    # does it converge.  Informs valid probe points for pointwise checks.
    no_limit_at: tuple[float, ...] | None = ()

    def __post_init__(self):
        if self.condition_class not in ("vanishing-M", "bounded-M", "divergent-M"):
            raise ValueError(f"bad condition_class {self.condition_class!r}")
        if not (self.support_radius >= 0.0):
            raise ValueError("support_radius must be nonnegative")


def _sici(x: float) -> tuple[float, float]:
    si, ci = special.sici(x)
    return float(si), float(ci)


def _box_eval(t):
    a = np.abs(np.asarray(t, dtype=float))
    # midpoint convention at the jump: f(+-1) = 1/2
    return np.where(a < 1.0, 1.0, np.where(a == 1.0, 0.5, 0.0))


def _box_partial(x, T):
    m = min(T, 1.0)
    if x == 0.0:
        return 2.0 * m
    return 2.0 * math.sin(x * m) / x


def _box_mean(x, h):
    si_p, _ = _sici(x + h)
    si_m, _ = _sici(x - h)
    return (si_p - si_m) / h


def _shifted_sin_moment(b: float) -> float:
    """int_0^inf sin(bt)/(1+t) dt for b > 0."""
    si, ci = _sici(b)
    return math.cos(b) * (math.pi / 2.0 - si) + math.sin(b) * ci


def _shifted_G(b: float) -> float:
    """int_0^inf sin(bt)/(t(1+t)) dt, odd in b."""
    if b == 0.0:
        return 0.0
    s = math.copysign(1.0, b)
    return s * (math.pi / 2.0 - _shifted_sin_moment(abs(b)))


def _shifted_partial(x, T):
    if x == 0.0:
        return 2.0 * math.log1p(T)
    ax = abs(x)
    si1, ci1 = _sici(ax)
    si2, ci2 = _sici(ax * (1.0 + T))
    return 2.0 * (math.cos(ax) * (ci2 - ci1) + math.sin(ax) * (si2 - si1))


def _shifted_limit(x):
    ax = abs(x)
    si, ci = _sici(ax)
    return 2.0 * (math.sin(ax) * (math.pi / 2.0 - si) - math.cos(ax) * ci)


def _const_partial(x, T):
    if x == 0.0:
        return 2.0 * T
    return 2.0 * math.sin(T * x) / x


def _registry() -> dict[str, TestFunction]:
    entries = [
        TestFunction(
            name="box",
            formula="1 on [-1,1], 0 outside (1/2 at the jumps)",
            evaluate=_box_eval,
            support_radius=1.0,
            envelope=DecayEnvelope(
                valid_from=1.0,
                bound=lambda u: np.where(np.asarray(u, dtype=float) <= 1.0, 1.0, 0.0),
                tail_over_t=lambda T: (0.0, True),
            ),
            globally_integrable=True,
            condition_class="vanishing-M",
            jump_points=(-1.0, 1.0),
            closed_forms=ClosedForms(
                partial_integral=_box_partial,
                partial_integral_domain="all x, all T > 0",
                weighted_mass=lambda T: T if T <= 1.0 else 1.0 / T,
                tail_weight=lambda T: 0.0 if T >= 1.0 else 2.0 * T * math.log(1.0 / T),
                lebesgue_mean=_box_mean,
                transform_limit=lambda x: 2.0 * math.sin(x) / x if x != 0.0 else 2.0,
                transform_limit_domain="all x",
            ),
        ),
        TestFunction(
            name="constant_one",
            formula="1",
            evaluate=lambda t: np.ones_like(np.asarray(t, dtype=float)),
            support_radius=math.inf,
            envelope=DecayEnvelope(
                valid_from=0.0,
                bound=lambda u: np.ones_like(np.asarray(u, dtype=float)),
                tail_over_t=lambda T: (math.inf, True),
            ),
            globally_integrable=False,
            condition_class="divergent-M",
            closed_forms=ClosedForms(
                partial_integral=_const_partial,
                partial_integral_domain="all x, all T > 0",
                weighted_mass=lambda T: T,
                tail_weight=lambda T: math.inf,
            ),
            no_limit_at=None,
        ),
        TestFunction(
            name="exp_abs",
            formula="exp(-|t|)",
            evaluate=lambda t: np.exp(-np.abs(t)),
            support_radius=math.inf,
            envelope=DecayEnvelope(
                valid_from=0.0,
                bound=lambda u: np.exp(-np.abs(u)),
                tail_over_t=lambda T: (float(special.exp1(T)), True),
            ),
            globally_integrable=True,
            condition_class="vanishing-M",
            jump_points=(0.0,),
            closed_forms=ClosedForms(
                partial_integral=lambda x, T: 2.0
                * (1.0 - math.exp(-T) * (math.cos(T * x) - x * math.sin(T * x)))
                / (1.0 + x * x),
                partial_integral_domain="all x, all T > 0",
                weighted_mass=lambda T: 2.0 * (1.0 - math.exp(-T) * (1.0 + T)) / T,
                tail_weight=lambda T: 2.0 * T * float(special.exp1(T)),
                lebesgue_mean=lambda x, h: (math.atan(x + h) - math.atan(x - h)) / h,
                transform_limit=lambda x: 2.0 / (1.0 + x * x),
                transform_limit_domain="all x",
            ),
        ),
        TestFunction(
            name="gaussian",
            formula="exp(-t^2)",
            evaluate=lambda t: np.exp(-np.asarray(t, dtype=float) ** 2),
            support_radius=math.inf,
            envelope=DecayEnvelope(
                valid_from=0.0,
                bound=lambda u: np.exp(-np.asarray(u, dtype=float) ** 2),
                tail_over_t=lambda T: (0.5 * float(special.exp1(T * T)), True),
            ),
            globally_integrable=True,
            condition_class="vanishing-M",
            closed_forms=ClosedForms(
                weighted_mass=lambda T: -math.expm1(-T * T) / T,
                tail_weight=lambda T: T * float(special.exp1(T * T)),
                lebesgue_mean=lambda x, h: math.pi
                / (2.0 * h)
                * float(special.erf((x + h) / 2.0) - special.erf((x - h) / 2.0)),
                transform_limit=lambda x: math.sqrt(math.pi) * math.exp(-x * x / 4.0),
                transform_limit_domain="all x",
            ),
        ),
        TestFunction(
            name="log_damped",
            formula="1/((1+|t|) log(2+|t|))",
            evaluate=lambda t: 1.0 / ((1.0 + np.abs(t)) * np.log(2.0 + np.abs(t))),
            support_radius=math.inf,
            envelope=DecayEnvelope(
                valid_from=0.0,
                bound=lambda u: 1.0 / ((1.0 + np.abs(u)) * np.log(2.0 + np.abs(u))),
                # bound only: log(2+u) is frozen at its left endpoint
                tail_over_t=lambda T: (math.log1p(1.0 / T) / math.log(2.0 + T), False),
            ),
            globally_integrable=False,
            condition_class="vanishing-M",
            jump_points=(0.0,),
            no_limit_at=(0.0,),
        ),
        TestFunction(
            name="shifted_reciprocal",
            formula="1/(1+|t|)",
            evaluate=lambda t: 1.0 / (1.0 + np.abs(t)),
            support_radius=math.inf,
            envelope=DecayEnvelope(
                valid_from=0.0,
                bound=lambda u: 1.0 / (1.0 + np.abs(u)),
                tail_over_t=lambda T: (math.log1p(1.0 / T), True),
            ),
            globally_integrable=False,
            condition_class="bounded-M",
            jump_points=(0.0,),
            closed_forms=ClosedForms(
                partial_integral=_shifted_partial,
                partial_integral_domain="all x, all T > 0",
                weighted_mass=lambda T: 2.0 * (1.0 - math.log1p(T) / T),
                tail_weight=lambda T: 2.0 * T * math.log1p(1.0 / T),
                lebesgue_mean=lambda x, h: (_shifted_G(x + h) - _shifted_G(x - h)) / h,
                transform_limit=_shifted_limit,
                transform_limit_domain="x != 0",
            ),
            no_limit_at=(0.0,),
        ),
        TestFunction(
            name="zero",
            formula="0",
            evaluate=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
            support_radius=0.0,
            envelope=DecayEnvelope(
                valid_from=0.0,
                bound=lambda u: np.zeros_like(np.asarray(u, dtype=float)),
                tail_over_t=lambda T: (0.0, True),
            ),
            globally_integrable=True,
            condition_class="vanishing-M",
            closed_forms=ClosedForms(
                partial_integral=lambda x, T: 0.0,
                partial_integral_domain="all x, all T > 0",
                weighted_mass=lambda T: 0.0,
                tail_weight=lambda T: 0.0,
                lebesgue_mean=lambda x, h: 0.0,
                transform_limit=lambda x: 0.0,
                transform_limit_domain="all x",
            ),
        ),
    ]
    return {e.name: e for e in entries}


_CATALOGUE = _registry()


def get(name: str) -> TestFunction:
    """Look up a catalogue entry by name."""
    try:
        return _CATALOGUE[name]
    except KeyError:
        raise UnknownFunctionError(name, names()) from None


def names() -> list[str]:
    return sorted(_CATALOGUE)


def list_functions() -> list[dict]:
    """Metadata summaries in deterministic (lexicographic) order."""
    out = []
    for name in names():
        fn = _CATALOGUE[name]
        out.append(
            {
                "name": fn.name,
                "formula": fn.formula,
                "support_radius": fn.support_radius,
                "globally_integrable": fn.globally_integrable,
                "condition_class": fn.condition_class,
            }
        )
    return out
