"""Partial integrals, sinc-kernel means, and their difference.

The two central objects are the symmetric partial integral

    I_T(x) = integral of f(t) e^{itx} over |t| < T

and the smoothed mean

    mean(x, h) = integral of f(t) e^{itx} sinc(t h) over all of R,

computed as a finite integral over |t| <= T_max plus a certified tail
bound.  Truncation relies on |sinc(u)| <= min(1, 1/|u|): beyond T the mean
tail is at most (2/h) * integral of E(u)/u over u > T for the decay
envelope E, so a doubling ladder on T finds a certified cut.  The
difference D(x, h) = mean(x, h) - I_{1/h}(x) pairs the mean with the
partial integral at T = 1/h exactly; there is no independent T knob.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quad
from .corpus import TestFunction
from .errors import (
    ComputeBudgetExceededError,
    EnvelopeUnavailableError,
    ToleranceNotMetError,
    TruncationUnachievableError,
)

_SINC_SERIES_CUTOFF = 1e-4
_LADDER_START = 1.0
_LADDER_CAP = 1e18


@dataclass(frozen=True)
class EvalPoint:
    """One (x, h, T) evaluation site."""

    x: float
    h: float
    T: float

    def __post_init__(self):
        if not self.h > 0.0:
            raise ValueError("h must be positive")
        if not self.T > 0.0:
            raise ValueError("T must be positive")


@dataclass(frozen=True)
class MeanResult:
    """A smoothed-mean value with its split error budget."""

    value: complex
    truncation_T: float
    tail_bound: float
    quad: quad.QuadResult

    @property
    def error_budget(self) -> float:
        return self.quad.abs_error_estimate + self.tail_bound


@dataclass(frozen=True)
class DiffResult:
    """mean(x, h) - I_{1/h}(x) with the combined error budget."""

    value: complex
    error_budget: float
    mean: MeanResult
    partial: quad.QuadResult


def sinc(u):
    """sin(u)/u with the removable singularity filled by its series.

    Below |u| <= 1e-4 the truncated series 1 - u^2/6 + u^4/120 is used;
    the switch point keeps both branches within machine precision of each
    other while avoiding the 0/0 at u = 0.
    """
    u = np.asarray(u, dtype=float)
    small = np.abs(u) <= _SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, u)
    u2 = u * u
    return np.where(small, 1.0 - u2 / 6.0 + u2 * u2 / 120.0, np.sin(safe) / safe)


def partial_integral_result(
    fn: TestFunction, x: float, T: float, tol: float = 1e-8
) -> quad.QuadResult:
    """I_T(x) as a full quadrature result."""
    if not T > 0.0:
        raise ValueError("T must be positive")
    a = min(T, fn.support_radius)
    if a == 0.0:
        return quad.QuadResult(0.0, 0.0, 0, 0, True)

    def integrand(t):
        return fn.evaluate(t) * (np.cos(x * t) + 1j * np.sin(x * t))

    jumps = tuple(j for j in fn.jump_points if -a < j < a)
    osc = quad.OscillationSpec(frequencies=frozenset({abs(x)}), jump_points=jumps)
    r = quad.integrate_finite(integrand, (-a, a), osc, tol)
    if not r.converged:
        raise ToleranceNotMetError(
            f"I_{T}({x}) for {fn.name}: estimate {r.abs_error_estimate:.3g} > tol {tol:.3g}"
        )
    return r


def partial_integral(fn: TestFunction, x: float, T: float, tol: float = 1e-8) -> complex:
    """I_T(x): the partial integral of f(t) e^{itx} over |t| < T."""
    return complex(partial_integral_result(fn, x, T, tol).value)


def _truncation_with_bound(fn: TestFunction, h: float, eps_tail: float) -> tuple[float, float]:
    if not h > 0.0:
        raise ValueError("h must be positive")
    if not eps_tail > 0.0:
        raise ValueError("eps_tail must be positive")
    support = fn.support_radius
    if math.isfinite(support):
        return max(support, 1.0), 0.0
    env = fn.envelope
    if env is None:
        raise EnvelopeUnavailableError(f"{fn.name} has no decay envelope")
    T = max(_LADDER_START, env.valid_from)
    while T <= _LADDER_CAP:
        tail, _ = env.tail_over_t(T)
        bound = 2.0 * tail / h
        if bound <= eps_tail:
            return T, bound
        T *= 2.0
    raise TruncationUnachievableError(
        f"{fn.name}: no T <= {_LADDER_CAP:.0e} certifies a mean tail <= {eps_tail:.3g} at h = {h:.3g}"
    )


def choose_truncation(fn: TestFunction, h: float, eps_tail: float) -> float:
    """Smallest ladder T with a certified mean tail below eps_tail.

    Compactly supported functions return their support radius (the tail is
    exactly zero); otherwise T doubles from 1 until the envelope bound
    2/(h) * integral of E(u)/u over u > T drops under eps_tail.
    """
    return _truncation_with_bound(fn, h, eps_tail)[0]


def _mean_osc(fn: TestFunction, x: float, h: float, T_max: float) -> quad.OscillationSpec:
    freqs = frozenset({abs(x), h, abs(x + h), abs(x - h)})
    jumps = tuple(j for j in fn.jump_points if -T_max < j < T_max)
    return quad.OscillationSpec(frequencies=freqs, jump_points=jumps)


def lebesgue_mean(
    fn: TestFunction,
    x: float,
    h: float,
    eps_tail: float | None = None,
    tol: float = 1e-8,
    truncation_T: float | None = None,
) -> MeanResult:
    """Smoothed mean of f at (x, h) with a certified truncation.

    With eps_tail omitted the budget is split evenly: the tail gets tol/2
    and the quadrature gets tol/2.  An explicit eps_tail leaves the full
    tol to the quadrature.  ``truncation_T`` overrides the chosen cut (it
    must still be certified by the envelope; used to probe the
    truncation certificate).
    """
    if not h > 0.0:
        raise ValueError("h must be positive")
    quad_tol = 0.5 * tol if eps_tail is None else tol
    eps = 0.5 * tol if eps_tail is None else eps_tail

    if truncation_T is None:
        T_max, tail_bound = _truncation_with_bound(fn, h, eps)
    else:
        T_max = float(truncation_T)
        if math.isfinite(fn.support_radius) and T_max >= fn.support_radius:
            tail_bound = 0.0
        elif fn.envelope is not None:
            tail_bound = 2.0 * fn.envelope.tail_over_t(T_max)[0] / h
        else:
            raise EnvelopeUnavailableError(f"{fn.name} has no decay envelope")

    osc = _mean_osc(fn, x, h, T_max)
    projected = 2.0 * T_max / quad.panel_width_cap(osc)
    if projected > quad.MAX_PANELS:
        raise ComputeBudgetExceededError(
            f"mean({fn.name}, x={x}, h={h}) needs ~{projected:.2e} panels at "
            f"T_max={T_max:.3e}; raise tol or eps_tail"
        )

    def integrand(t):
        return fn.evaluate(t) * (np.cos(x * t) + 1j * np.sin(x * t)) * sinc(t * h)

    r = quad.integrate_finite(integrand, (-T_max, T_max), osc, quad_tol)
    if not r.converged:
        raise ToleranceNotMetError(
            f"mean({fn.name}, x={x}, h={h}): estimate {r.abs_error_estimate:.3g} "
            f"> tol {quad_tol:.3g}"
        )
    return MeanResult(value=complex(r.value), truncation_T=T_max, tail_bound=tail_bound, quad=r)


def diff_detail(
    fn: TestFunction,
    x: float,
    h: float,
    eps_tail: float | None = None,
    tol: float = 1e-8,
) -> DiffResult:
    """D(x, h) = mean(x, h) - I_{1/h}(x), with the summed error budget."""
    mean = lebesgue_mean(fn, x, h, eps_tail, tol)
    part = partial_integral_result(fn, x, 1.0 / h, tol)
    return DiffResult(
        value=complex(mean.value) - complex(part.value),
        error_budget=mean.error_budget + part.abs_error_estimate,
        mean=mean,
        partial=part,
    )


def mean_minus_partial(
    fn: TestFunction,
    x: float,
    h: float,
    eps_tail: float | None = None,
    tol: float = 1e-8,
) -> complex:
    """The difference D(x, h) between the mean and the paired partial integral."""
    return diff_detail(fn, x, h, eps_tail, tol).value
