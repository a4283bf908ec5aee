"""Numerical laboratory for sinc-kernel summability of trigonometric integrals.

The package computes symmetric partial integrals of f(t) e^{itx}, their
sinc-smoothed means, the weighted mass and tail functionals M(T) and Q(T),
and runs the sweep / pointwise experiments that check how the smoothed
means track the partial integrals as the kernel parameter h shrinks --
including on locally integrable functions with divergent absolute
integrals, where the smoothing is doing real work.
"""

from . import corpus, functionals, harness, quad, summability
from .corpus import ClosedForms, DecayEnvelope, TestFunction
from .errors import (
    ComputeBudgetExceededError,
    EnvelopeUnavailableError,
    GridError,
    NonFiniteSampleError,
    ToleranceNotMetError,
    TrigsumError,
    TruncationUnachievableError,
    UnknownFunctionError,
)
from .functionals import (
    ConditionReport,
    LemmaReport,
    classify_conditions,
    lemma_report,
    tail_functional,
    verify_lemma2,
    verify_lemma3,
    weighted_mass,
)
from .harness import (
    ConvergenceReport,
    SweepReport,
    abelian_sweep,
    extrapolate_limit,
    tauberian_check,
)
from .quad import OscillationSpec, QuadResult, integrate_finite, integrate_tail, panelize
from .summability import (
    DiffResult,
    EvalPoint,
    MeanResult,
    choose_truncation,
    diff_detail,
    lebesgue_mean,
    mean_minus_partial,
    partial_integral,
    partial_integral_result,
    sinc,
)

__version__ = "0.1.0"
