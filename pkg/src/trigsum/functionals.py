"""Mass and tail functionals, trend classification, and the lemma checks.

Two scalar functionals drive everything here, written M and Q throughout
the package:

    M(T) = (1/T) * integral of |t f(t)| over |t| < T
    Q(T) =   T   * integral of |f(t)/t| over |t| > T

A function is classified by the sampled trend of M over a grid spanning at
least three decades: vanishing (M decays), bounded (M neither decays nor
grows past the thresholds), divergent (M grows).  The lemma checks assert
the corresponding trend of Q (vanishing class) and the sup bound
Q <= 4 * B_hat beyond T1 (non-divergent classes), with B_hat the grid
supremum of M past T1.

Limit statements are undecidable from finite data; the trend rule compares
the last grid value against the value three decades earlier with fixed
thresholds 0.5 and 2, which keeps slowly varying (logarithmic) decay on
the vanishing side while separating the catalogue classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quad
from .corpus import TestFunction
from .errors import GridError, ToleranceNotMetError

DEFAULT_T1 = 1.0

VANISHING = "vanishing-M"
BOUNDED = "bounded-M"
DIVERGENT = "divergent-M"

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"

_MIN_GRID_POINTS = 4
_SPAN_DECADES = 3.0


@dataclass(frozen=True)
class ConditionReport:
    """Sampled M trajectory and its trend classification."""

    fn_name: str
    T_grid: tuple[float, ...]
    M_values: tuple[float, ...]
    classification: str
    B_hat: float
    T1: float


@dataclass(frozen=True)
class LemmaReport:
    """Joint M/Q trajectories and both lemma verdicts.

    A verdict is not-applicable exactly when the function's classification
    is outside that lemma's hypothesis class.
    """

    fn_name: str
    T_grid: tuple[float, ...]
    M_values: tuple[float, ...]
    Q_values: tuple[float, ...]
    classification: str
    B_hat: float
    T1: float
    lemma2_verdict: str
    lemma3_verdict: str
    bound_ratio: float


def weighted_mass(fn: TestFunction, T: float, tol: float = 1e-8) -> float:
    """M(T) with absolute error at most tol."""
    if not T > 0.0:
        raise ValueError("T must be positive")
    a = min(T, fn.support_radius)
    if a == 0.0:
        return 0.0

    def integrand(t):
        return np.abs(t) * np.abs(fn.evaluate(t))

    jumps = tuple(j for j in fn.jump_points if -a < j < a) + (0.0,)
    r = quad.integrate_finite(
        integrand, (-a, a), quad.OscillationSpec(jump_points=jumps), tol * T
    )
    if not r.converged:
        raise ToleranceNotMetError(
            f"M({T}) for {fn.name}: estimate {r.abs_error_estimate / T:.3g} > tol {tol:.3g}"
        )
    return float(r.value) / T


def tail_functional(fn: TestFunction, T: float, tol: float = 1e-8) -> float:
    """Q(T) with absolute error at most tol (inf when the tail diverges)."""
    if not T > 0.0:
        raise ValueError("T must be positive")
    r = quad.integrate_tail(fn, T, tol=tol / T)
    if not r.converged:
        raise ToleranceNotMetError(
            f"Q({T}) for {fn.name}: estimate {r.abs_error_estimate * T:.3g} > tol {tol:.3g}"
        )
    return T * float(r.value)


def _check_grid(T_grid) -> tuple[float, ...]:
    grid = tuple(float(T) for T in T_grid)
    if len(grid) < _MIN_GRID_POINTS:
        raise GridError(f"grid too small: need >= {_MIN_GRID_POINTS} points")
    if any(T <= 0.0 for T in grid):
        raise GridError("grid values must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise GridError("grid must be strictly increasing")
    if grid[-1] / grid[0] < 10.0**_SPAN_DECADES * (1.0 - 1e-12):
        raise GridError(
            f"grid too small: must span >= {_SPAN_DECADES:.0f} decades, "
            f"got {math.log10(grid[-1] / grid[0]):.2f}"
        )
    return grid


def _trend(grid, values, slack: float) -> str:
    """Trend of a nonnegative trajectory: vanishing / bounded / divergent."""
    T_last = grid[-1]
    ref_idx = max(i for i, T in enumerate(grid) if T <= T_last / 10.0**_SPAN_DECADES * (1 + 1e-12))
    top = [v for T, v in zip(grid, values) if T >= T_last / 10.0 * (1 - 1e-12)]
    if len(top) < 2:
        top = list(values[-2:])
    ref = values[ref_idx]
    last = values[-1]
    decreasing = all(b <= a + slack for a, b in zip(top, top[1:]))
    if decreasing and last <= 0.5 * ref + slack:
        return VANISHING
    if last > 2.0 * ref and last >= max(values) - slack:
        return DIVERGENT
    return BOUNDED


def classify_conditions(
    fn: TestFunction, T_grid, T1: float = DEFAULT_T1, tol: float = 1e-8
) -> ConditionReport:
    """Sample M over the grid and classify its trend.

    The grid must be increasing and span at least three decades; B_hat is
    the grid supremum of M over T > T1.
    """
    grid = _check_grid(T_grid)
    M = tuple(weighted_mass(fn, T, tol) for T in grid)
    past_T1 = [m for T, m in zip(grid, M) if T > T1]
    if not past_T1:
        raise GridError(f"no grid points beyond T1 = {T1}")
    slack = max(10.0 * tol, 1e-12)
    return ConditionReport(
        fn_name=fn.name,
        T_grid=grid,
        M_values=M,
        classification=_trend(grid, M, slack),
        B_hat=max(past_T1),
        T1=float(T1),
    )


def lemma_report(
    fn: TestFunction, T_grid, T1: float = DEFAULT_T1, tol: float = 1e-8
) -> LemmaReport:
    """Joint report backing both lemma checks on one grid."""
    cond = classify_conditions(fn, T_grid, T1, tol)
    grid = cond.T_grid
    Q = tuple(tail_functional(fn, T, tol) for T in grid)
    slack = max(10.0 * tol, 1e-12)

    if cond.classification == VANISHING:
        lemma2 = PASS if _trend(grid, Q, slack) == VANISHING else FAIL
    else:
        lemma2 = NOT_APPLICABLE

    if cond.classification == DIVERGENT:
        lemma3 = NOT_APPLICABLE
        ratio = math.inf
    else:
        past = [q for T, q in zip(grid, Q) if T > T1]
        bound = 4.0 * cond.B_hat
        lemma3 = PASS if all(q <= bound + tol for q in past) else FAIL
        q_max = max(past)
        if bound > 0.0:
            ratio = q_max / bound
        else:
            ratio = 0.0 if q_max <= slack else math.inf
    return LemmaReport(
        fn_name=fn.name,
        T_grid=grid,
        M_values=cond.M_values,
        Q_values=Q,
        classification=cond.classification,
        B_hat=cond.B_hat,
        T1=cond.T1,
        lemma2_verdict=lemma2,
        lemma3_verdict=lemma3,
        bound_ratio=ratio,
    )


def verify_lemma2(fn: TestFunction, T_grid, tol: float = 1e-8) -> LemmaReport:
    """Check that Q vanishes along the grid for mass-vanishing functions."""
    return lemma_report(fn, T_grid, DEFAULT_T1, tol)


def verify_lemma3(
    fn: TestFunction, T1: float, T_grid, tol: float = 1e-8
) -> LemmaReport:
    """Check Q(T) <= 4 * B_hat for every grid T > T1 (non-divergent classes)."""
    return lemma_report(fn, T_grid, T1, tol)
