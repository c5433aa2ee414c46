"""Sinc interpolation of algebraically decaying functions on the real line."""

from .cardinal import (
    DecaySpec,
    EvaluationError,
    InterpolationPlan,
    Rule,
    SampledInterpolant,
    StripSpec,
    TargetFunction,
    discrete_error,
    evaluate,
    grid,
    sample,
)
from .specfun import DomainError, beta, lambert_w0, log_gamma, sinc
from .stepsize import (
    StepRuleInput,
    balance_residual,
    h_classical,
    h_log_approx,
    h_w_exact,
    h_w_optimized,
    h_w_strip,
    n_zero,
)

__version__ = "0.1.0"
