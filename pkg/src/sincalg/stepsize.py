"""Mesh-size rules for sinc interpolation of algebraically decaying functions.

Every Lambert-W rule solves the same balance between the discretization
envelope ``exp(-pi d / h) / c2`` and the truncation envelope
``(N+1)**(1-alpha) / ((alpha-1) h**alpha)``; they differ only in ``c2``:

=============  ===============================
rule           c2
=============  ===============================
w-exact        ``pi d``
w-optimized    ``pi d L / N1``
w-strip        ``pi d / (2 beta)``
=============  ===============================
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cardinal import DecaySpec, StripSpec
from .specfun import DomainError, lambert_w0, log_beta, sinc

__all__ = [
    "StepRuleInput",
    "h_classical",
    "h_balanced",
    "h_w_exact",
    "h_w_optimized",
    "h_w_strip",
    "h_log_approx",
    "strip_beta",
    "c2_w_exact",
    "c2_w_optimized",
    "c2_w_strip",
    "w_argument",
    "balance_residual",
    "n_zero",
]


@dataclass(frozen=True)
class StepRuleInput:
    """Decay order, strip width and number of terms entering a step rule."""

    decay: DecaySpec
    strip: StripSpec
    n_terms: int

    def __post_init__(self):
        if int(self.n_terms) != self.n_terms or self.n_terms < 0:
            raise ValueError(f"n_terms must be a non-negative integer, got {self.n_terms!r}")
        object.__setattr__(self, "n_terms", int(self.n_terms))

    @classmethod
    def of(cls, alpha: float, d: float, n: int, big_l: float = 1.0,
           strip_norm: float | None = None) -> "StepRuleInput":
        return cls(DecaySpec(alpha, big_l), StripSpec(d, strip_norm), n)

    @property
    def alpha(self) -> float:
        return self.decay.alpha

    @property
    def d(self) -> float:
        return self.strip.half_width

    def with_n(self, n: int) -> "StepRuleInput":
        return StepRuleInput(self.decay, self.strip, n)


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return value


def h_classical(alpha_exp: float, d: float, n: int) -> float:
    """Step ``sqrt(pi d / (alpha N))`` for exponentially decaying functions.

    ``alpha_exp`` is the exponential rate in ``|f(x)| <= L exp(-alpha |x|)``.
    """
    alpha_exp = _positive("alpha", alpha_exp)
    d = _positive("d", d)
    if int(n) != n or n < 1:
        raise DomainError(f"classical rule needs an integer N >= 1, got {n!r}")
    return math.sqrt(math.pi * d / (alpha_exp * n))


def w_argument(inp: StepRuleInput, c2: float) -> float:
    """Argument of W in the balanced step for the given ``c2``.

    ``(pi d / alpha) * ((alpha - 1) / c2)**(1/alpha) * (N + 1)**((alpha-1)/alpha)``
    """
    a, d = inp.alpha, inp.d
    c2 = _positive("c2", c2)
    pd = math.pi * d
    log_arg = (math.log(pd / a) + (math.log(a - 1.0) - math.log(c2)) / a
               + (a - 1.0) / a * math.log(inp.n_terms + 1.0))
    return math.exp(log_arg)


def h_balanced(inp: StepRuleInput, c2: float) -> float:
    """Step ``h`` solving the balance equation for an arbitrary ``c2 > 0``."""
    arg = w_argument(inp, c2)
    if not arg > 0.0:
        raise DomainError(f"Lambert-W argument underflowed to {arg!r}")
    w = lambert_w0(arg).value
    return (math.pi * inp.d / inp.alpha) / w


def c2_w_exact(inp: StepRuleInput) -> float:
    return math.pi * inp.d


def c2_w_optimized(inp: StepRuleInput, strip_norm: float) -> float:
    strip_norm = _positive("strip norm N1", strip_norm)
    return math.pi * inp.d * inp.decay.big_l / strip_norm


def strip_beta(alpha: float, d: float) -> float:
    """``min(2 / sinc(1/alpha), (2/d)**(alpha-1) B((alpha-1)/2, (alpha+1)/2))``.

    Both branches are compared in log space so that ``(2/d)**(alpha-1)``
    cannot overflow for small ``d`` or large ``alpha``.
    """
    if not alpha > 1.0:
        raise DomainError(f"strip rule needs alpha > 1, got {alpha!r}")
    d = _positive("d", d)
    log_sinc_branch = math.log(2.0) - math.log(sinc(1.0 / alpha))
    log_beta_branch = ((alpha - 1.0) * math.log(2.0 / d)
                       + log_beta(alpha / 2.0 - 0.5, alpha / 2.0 + 0.5))
    return math.exp(min(log_sinc_branch, log_beta_branch))


def c2_w_strip(inp: StepRuleInput) -> float:
    # N1 replaced by its bound 2 L beta, so pi d L / N1 = pi d / (2 beta)
    return math.pi * inp.d / (2.0 * strip_beta(inp.alpha, inp.d))


def h_w_exact(inp: StepRuleInput) -> float:
    """Lambert-W step with ``c2 = pi d`` (no knowledge of ``N1`` or ``L``)."""
    return h_balanced(inp, c2_w_exact(inp))


def h_w_optimized(inp: StepRuleInput, strip_norm: float) -> float:
    """Lambert-W step using the strip norm ``N1`` and the decay constant ``L``."""
    return h_balanced(inp, c2_w_optimized(inp, strip_norm))


def h_w_strip(inp: StepRuleInput) -> float:
    """Lambert-W step with ``N1`` replaced by its closed-form bound."""
    return h_balanced(inp, c2_w_strip(inp))


def h_log_approx(inp: StepRuleInput) -> float:
    """``pi d / (alpha + (alpha - 1) ln(N + 1))``."""
    a = inp.alpha
    return math.pi * inp.d / (a + (a - 1.0) * math.log(inp.n_terms + 1.0))


def balance_residual(h: float, inp: StepRuleInput, c2: float) -> float:
    """Signed relative residual ``(lhs - rhs) / rhs`` of the balance equation.

    ``lhs = exp(-pi d / h) / c2`` and ``rhs = (N+1)**(1-alpha) / ((alpha-1) h**alpha)``.
    Positive when ``h`` is larger than the balanced step.
    """
    h = _positive("h", h)
    c2 = _positive("c2", c2)
    a, d = inp.alpha, inp.d
    log_lhs = -math.pi * d / h - math.log(c2)
    log_rhs = ((1.0 - a) * math.log(inp.n_terms + 1.0) - math.log(a - 1.0)
               - a * math.log(h))
    return math.expm1(log_lhs - log_rhs)


def n_zero(inp: StepRuleInput, c2: float) -> float:
    """Real maximizer ``N0`` of the truncation envelope under the log-form step.

    ``(alpha/(pi d))**(alpha/(alpha-1)) * e**(alpha/(alpha-1))
    * ((alpha-1)/c2)**(-1/(alpha-1)) - 1``
    """
    c2 = _positive("c2", c2)
    a, d = inp.alpha, inp.d
    p = a / (a - 1.0)
    log_val = p * math.log(a / (math.pi * d)) + p - math.log((a - 1.0) / c2) / (a - 1.0)
    if log_val > 709.0:
        return math.inf
    return math.expm1(log_val)
