"""Theorem-level experiments: uniform sweeps and pointwise convergence checks.

A sweep fills the matrix D(x, h) over an x-grid and a decreasing h
sequence and asks whether the per-h suprema fall; the pointwise check
first extrapolates the partial-integral trajectory I_T(x0) to a limit
estimate, then asks whether |D(x0, h)| falls.  Both verdicts use the same
fixed rule: suprema (or |D|) must be nonincreasing within the per-cell
error budgets and the final value must drop below half of the first.

Uniformity over all real x is operationally replaced by suprema over the
finite grid on a compact window; window and grid are part of the report.
The convergence thresholds are fixed engineering constants, recorded here
rather than tuned per run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import functionals, summability
from .corpus import TestFunction
from .errors import (
    ComputeBudgetExceededError,
    EnvelopeUnavailableError,
    GridError,
    ToleranceNotMetError,
    TruncationUnachievableError,
)

CONVERGING = "converging"
NOT_CONVERGING = "not-converging"
INCONCLUSIVE = "inconclusive"
NO_LIMIT = "no-limit-detected"

# absolute floor for the "final < half of first" rule, so identically-zero
# difference sequences count as converging
_ZERO_FLOOR = 1e-14

_DEFAULT_CLASSIFY_GRID = tuple(10.0 ** (4.0 * k / 16) for k in range(17))
_DEFAULT_T_SEQ = tuple(10.0 ** (1.0 + 3.0 * k / 7) for k in range(8))
_DEFAULT_H_SEQ = (1.0, 0.1, 0.01, 0.001)

_CELL_ERRORS = (
    TruncationUnachievableError,
    ComputeBudgetExceededError,
    EnvelopeUnavailableError,
    ToleranceNotMetError,
)


@dataclass(frozen=True)
class SweepReport:
    """Grid of differences D(x, h) with per-h suprema and a verdict."""

    fn_name: str
    x_grid: tuple[float, ...]
    h_seq: tuple[float, ...]
    D_matrix: tuple[tuple[complex, ...], ...]  # indexed [ix][ih]
    error_budget_matrix: tuple[tuple[float, ...], ...]
    sup_abs_D: tuple[float, ...]  # per h
    verdict: str
    classification: str
    hypothesis_ok: bool
    tol: float
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ConvergenceReport:
    """Pointwise trajectory data at x0 with the extrapolated limit."""

    fn_name: str
    x0: float
    T_seq: tuple[float, ...]
    I_values: tuple[complex, ...]
    ell_hat: complex
    stability: float
    h_seq: tuple[float, ...]
    mean_values: tuple[complex, ...]
    D_abs: tuple[float, ...]
    residuals: tuple[float, ...]  # |mean - ell_hat| per h
    error_budgets: tuple[float, ...]  # per h, mean + partial
    verdict: str
    classification: str
    hypothesis_ok: bool
    tol: float
    notes: tuple[str, ...] = ()


def _check_h_seq(h_seq) -> tuple[float, ...]:
    hs = tuple(float(h) for h in h_seq)
    if len(hs) < 4:
        raise GridError("h sequence needs >= 4 values")
    if any(h <= 0.0 for h in hs):
        raise GridError("h values must be positive")
    if any(b >= a for a, b in zip(hs, hs[1:])):
        raise GridError("h sequence must be strictly decreasing")
    if hs[0] / hs[-1] < 1000.0 * (1.0 - 1e-12):
        raise GridError("h sequence must span >= 3 decades")
    return hs


def _classification(fn: TestFunction, tol: float) -> str:
    grid_tol = min(max(tol, 1e-10), 1e-6)
    return functionals.classify_conditions(fn, _DEFAULT_CLASSIFY_GRID, tol=grid_tol).classification


def _series_verdict(seq: tuple[float, ...], budgets: tuple[float, ...]) -> str:
    """Shared decision rule for per-h supremum / |D| sequences.

    Converging means the sequence is nonincreasing (within the per-value
    error budgets) from its peak onward and the final value is below half
    of the first.  Judging decay from the peak tolerates a non-asymptotic
    head at large h; for monotone data it coincides with requiring decay
    along the whole sequence.
    """
    if any(math.isnan(v) for v in seq):
        return INCONCLUSIVE
    first, final = seq[0], seq[-1]
    peak = max(range(len(seq)), key=seq.__getitem__)
    tail = seq[peak:]
    tail_budgets = budgets[peak:]
    monotone = all(
        b <= a + tail_budgets[i] + tail_budgets[i + 1]
        for i, (a, b) in enumerate(zip(tail, tail[1:]))
    )
    if monotone and (final < 0.5 * first or final <= _ZERO_FLOOR):
        return CONVERGING
    if final - 0.5 * first > budgets[-1] + 0.5 * budgets[0]:
        return NOT_CONVERGING
    return INCONCLUSIVE


def abelian_sweep(fn: TestFunction, x_grid, h_seq, tol: float = 1e-8) -> SweepReport:
    """Fill D(x, h) over the grid and judge the decay of its suprema.

    Functions outside the mass-vanishing class still run, but the report
    is flagged as a hypothesis violation.  Cells whose evaluation fails
    (e.g. no achievable truncation) are NaN and force an inconclusive
    verdict.
    """
    xs = tuple(float(x) for x in x_grid)
    if not xs:
        raise GridError("x grid must be nonempty")
    hs = _check_h_seq(h_seq)
    classification = _classification(fn, tol)
    notes = []
    if classification != functionals.VANISHING:
        notes.append(
            f"hypothesis violation: {fn.name} classified {classification}, "
            "uniform-decay claim not asserted"
        )

    D = [[complex(math.nan, math.nan)] * len(hs) for _ in xs]
    budgets = [[math.inf] * len(hs) for _ in xs]
    failed: set[str] = set()
    for ih, h in enumerate(hs):
        for ix, x in enumerate(xs):
            try:
                d = summability.diff_detail(fn, x, h, tol=tol)
            except _CELL_ERRORS as exc:
                failed.add(f"cell (x={x:g}, h={h:g}): {type(exc).__name__}")
                continue
            D[ix][ih] = d.value
            budgets[ix][ih] = d.error_budget
    notes.extend(sorted(failed))

    sups = tuple(
        max(abs(D[ix][ih]) for ix in range(len(xs)))
        for ih in range(len(hs))
    )
    sup_budgets = tuple(
        max(budgets[ix][ih] for ix in range(len(xs))) for ih in range(len(hs))
    )
    verdict = _series_verdict(sups, sup_budgets)
    return SweepReport(
        fn_name=fn.name,
        x_grid=xs,
        h_seq=hs,
        D_matrix=tuple(tuple(row) for row in D),
        error_budget_matrix=tuple(tuple(row) for row in budgets),
        sup_abs_D=sups,
        verdict=verdict,
        classification=classification,
        hypothesis_ok=classification == functionals.VANISHING,
        tol=tol,
        notes=tuple(notes),
    )


def extrapolate_limit(T_seq, values) -> tuple[complex, float]:
    """Limit estimate of a trajectory by one stage of pair averaging.

    Returns (ell_hat, stability): ell_hat is the mean of the last two
    averaged-pair values, stability the spread of the last three.  One
    averaging stage damps slowly decaying oscillatory tails without the
    brittleness of high-order acceleration.
    """
    Ts = tuple(float(T) for T in T_seq)
    vals = tuple(complex(v) for v in values)
    if len(vals) < 4:
        raise GridError("extrapolation needs >= 4 samples")
    if len(Ts) != len(vals):
        raise GridError("T_seq and values must have equal length")
    if any(b <= a for a, b in zip(Ts, Ts[1:])):
        raise GridError("T_seq must be strictly increasing")
    averaged = [0.5 * (a + b) for a, b in zip(vals, vals[1:])]
    ell_hat = 0.5 * (averaged[-1] + averaged[-2])
    last3 = averaged[-3:]
    stability = max(abs(a - b) for a in last3 for b in last3)
    return ell_hat, stability


def _monotone_drift(values: tuple[complex, ...]) -> bool:
    re = [v.real for v in values]
    im = [v.imag for v in values]
    for comp in (re, im):
        d = [b - a for a, b in zip(comp, comp[1:])]
        if all(x > 0.0 for x in d) or all(x < 0.0 for x in d):
            return True
    return False


def tauberian_check(
    fn: TestFunction,
    x0: float,
    T_seq=None,
    h_seq=None,
    tol: float = 1e-8,
) -> ConvergenceReport:
    """Pointwise check at x0: extrapolate I_T(x0), then test |D(x0, h)| decay.

    When the I_T trajectory is unstable under averaging and drifts
    monotonically, the verdict is no-limit-detected and the mean stage is
    skipped: x0 is then outside the pointwise-convergence hypothesis.
    """
    Ts = tuple(float(T) for T in (T_seq if T_seq is not None else _DEFAULT_T_SEQ))
    hs = _check_h_seq(h_seq if h_seq is not None else _DEFAULT_H_SEQ)
    classification = _classification(fn, tol)
    hypothesis_ok = classification in (functionals.VANISHING, functionals.BOUNDED)
    notes = []
    if not hypothesis_ok:
        notes.append(
            f"hypothesis violation: {fn.name} classified {classification}, "
            "bounded-mass condition not satisfied"
        )

    I_results = [summability.partial_integral_result(fn, x0, T, tol) for T in Ts]
    I_values = tuple(complex(r.value) for r in I_results)
    I_budget = max(r.abs_error_estimate for r in I_results)
    ell_hat, stability = extrapolate_limit(Ts, I_values)

    if stability > 10.0 * max(I_budget, 1e-15) and _monotone_drift(I_values):
        notes.append(
            f"I_T({x0:g}) drifts monotonically with stability {stability:.3g}; "
            "no finite limit detected"
        )
        return ConvergenceReport(
            fn_name=fn.name,
            x0=float(x0),
            T_seq=Ts,
            I_values=I_values,
            ell_hat=ell_hat,
            stability=stability,
            h_seq=hs,
            mean_values=(),
            D_abs=(),
            residuals=(),
            error_budgets=(),
            verdict=NO_LIMIT,
            classification=classification,
            hypothesis_ok=hypothesis_ok,
            tol=tol,
            notes=tuple(notes),
        )

    mean_values = []
    D_abs = []
    residuals = []
    budgets = []
    for h in hs:
        try:
            d = summability.diff_detail(fn, x0, h, tol=tol)
        except _CELL_ERRORS as exc:
            notes.append(f"h={h:g}: {type(exc).__name__}")
            mean_values.append(complex(math.nan, math.nan))
            D_abs.append(math.nan)
            residuals.append(math.nan)
            budgets.append(math.inf)
            continue
        mean_values.append(d.mean.value)
        D_abs.append(abs(d.value))
        residuals.append(abs(d.mean.value - ell_hat))
        budgets.append(d.error_budget)

    verdict = _series_verdict(tuple(D_abs), tuple(budgets))
    return ConvergenceReport(
        fn_name=fn.name,
        x0=float(x0),
        T_seq=Ts,
        I_values=I_values,
        ell_hat=ell_hat,
        stability=stability,
        h_seq=hs,
        mean_values=tuple(mean_values),
        D_abs=tuple(D_abs),
        residuals=tuple(residuals),
        error_budgets=tuple(budgets),
        verdict=verdict,
        classification=classification,
        hypothesis_ok=hypothesis_ok,
        tol=tol,
        notes=tuple(notes),
    )
