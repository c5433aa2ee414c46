"""A priori error envelopes ``E_N`` and the constants that multiply them.

All Lambert-W and log-form envelopes reduce, after balancing, to the
truncation form ``(N+1)**(1-alpha) / ((alpha-1) h**alpha)`` with the
rule's own ``h``; `predicted_error` always reports that form. The
constants ``c`` are returned separately so callers decide when to form
``c * E_N``.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Optional

from . import stepsize
from .cardinal import DecaySpec, Rule
from .specfun import DomainError, lambert_w0, log_beta, sinc
from .stepsize import StepRuleInput

__all__ = [
    "PredictedError",
    "e_n_classical",
    "e_n_w_exact",
    "c_one",
    "c_one_forms",
    "e_n_truncation_form",
    "e_n_log_approx",
    "e_n_asymptotic",
    "strip_norm_bound",
    "strip_norm_bound_branches",
    "predicted_error",
]

# log-space evaluation kicks in beyond this decay order
_LOG_SPACE_ALPHA = 30.0


class PredictedError(NamedTuple):
    """Step, envelope ``E_N`` and constant ``c`` (``None`` when unavailable)."""

    h: float
    envelope: float
    c_const: Optional[float]


def e_n_classical(alpha_exp: float, d: float, n: int) -> float:
    """``sqrt(N) exp(-sqrt(pi d alpha N))`` for exponential decay rate ``alpha``."""
    if not (alpha_exp > 0.0 and d > 0.0 and n >= 1):
        raise DomainError("classical envelope needs alpha > 0, d > 0, N >= 1")
    return math.sqrt(n) * math.exp(-math.sqrt(math.pi * d * alpha_exp * n))


def _w_exact_arg(alpha: float, d: float, n: int) -> float:
    return stepsize.w_argument(StepRuleInput.of(alpha, d, n), math.pi * d)


def e_n_w_exact(inp: StepRuleInput) -> float:
    """``alpha**alpha (N+1)**(1-alpha) W**alpha / ((alpha-1) (pi d)**alpha)``."""
    a, d, n = inp.alpha, inp.d, inp.n_terms
    w = lambert_w0(_w_exact_arg(a, d, n)).value
    pd = math.pi * d
    if a >= _LOG_SPACE_ALPHA or not 1e-100 < pd < 1e100:
        log_e = (a * math.log(a) + (1.0 - a) * math.log(n + 1.0) + a * math.log(w)
                 - math.log(a - 1.0) - a * math.log(pd))
        return math.exp(log_e)
    return a ** a * (n + 1.0) ** (1.0 - a) / ((a - 1.0) * pd ** a) * w ** a


def c_one_forms(alpha: float, d: float) -> tuple[float, float]:
    """The constant ``c1`` evaluated two ways: ``(exp form, rational form)``.

    exp form:      ``1 / (1 - exp(-2 alpha W(x)))``
    rational form: ``A / (A - alpha**(2 alpha) W(x)**(2 alpha))`` with
    ``A = (pi d)**(2(alpha-1)) (alpha-1)**2`` and
    ``x = (pi d / alpha) ((alpha-1)/(pi d))**(1/alpha)``.

    The rational form is evaluated through ``log B - log A`` so neither
    power overflows.
    """
    if not alpha > 1.0 or not d > 0.0:
        raise DomainError(f"c1 needs alpha > 1 and d > 0, got alpha={alpha!r}, d={d!r}")
    w = lambert_w0(_w_exact_arg(alpha, d, 0)).value
    pd = math.pi * d
    exp_den = -math.expm1(-2.0 * alpha * w)
    log_a = 2.0 * (alpha - 1.0) * math.log(pd) + 2.0 * math.log(alpha - 1.0)
    log_b = 2.0 * alpha * math.log(alpha) + 2.0 * alpha * math.log(w)
    rat_den = -math.expm1(log_b - log_a)
    if not (exp_den > 0.0 and rat_den > 0.0):
        raise ArithmeticError(
            f"c1 denominator is non-positive for alpha={alpha!r}, d={d!r}"
        )
    return 1.0 / exp_den, 1.0 / rat_den


def c_one(alpha: float, d: float) -> float:
    """Discretization constant ``c1 > 1`` (the ``N = 0`` supremum).

    Raises `ArithmeticError` if the two closed forms disagree beyond 1e-10
    relative, which only happens when the rational form is ill-conditioned.
    """
    exp_form, rat_form = c_one_forms(alpha, d)
    if abs(exp_form - rat_form) > 1e-10 * exp_form:
        raise ArithmeticError(
            f"c1 forms disagree: {exp_form!r} vs {rat_form!r} (alpha={alpha!r}, d={d!r})"
        )
    return exp_form


def e_n_truncation_form(h: float, inp: StepRuleInput) -> float:
    """``(N+1)**(1-alpha) / ((alpha-1) h**alpha)``."""
    if not h > 0.0:
        raise DomainError(f"h must be > 0, got {h!r}")
    a, n = inp.alpha, inp.n_terms
    if a >= _LOG_SPACE_ALPHA:
        return math.exp((1.0 - a) * math.log(n + 1.0) - math.log(a - 1.0) - a * math.log(h))
    return (n + 1.0) ** (1.0 - a) / ((a - 1.0) * h ** a)


def e_n_log_approx(inp: StepRuleInput) -> float:
    """``(N+1)**(1-alpha) (alpha + (alpha-1) ln(N+1))**alpha / ((alpha-1)(pi d)**alpha)``."""
    a, d, n = inp.alpha, inp.d, inp.n_terms
    q = a + (a - 1.0) * math.log(n + 1.0)
    pd = math.pi * d
    if a >= _LOG_SPACE_ALPHA or not 1e-100 < pd < 1e100:
        return math.exp((1.0 - a) * math.log(n + 1.0) + a * math.log(q)
                        - math.log(a - 1.0) - a * math.log(pd))
    return (n + 1.0) ** (1.0 - a) * q ** a / ((a - 1.0) * pd ** a)


def e_n_asymptotic(inp: StepRuleInput) -> Optional[float]:
    """N-dependent factor of the logarithmic upper bound, without ``c``.

    ``((N+1)/(alpha-1))**(1-alpha) ln(y)**alpha / (pi d)**(alpha-1)`` with
    ``y = pi d ((alpha-1)/alpha**alpha)**(1/(alpha-1)) (N+1)``.

    Returns ``None`` when ``y <= 1``: the bound says nothing there.
    """
    a, d, n = inp.alpha, inp.d, inp.n_terms
    pd = math.pi * d
    log_y = (math.log(pd) + (math.log(a - 1.0) - a * math.log(a)) / (a - 1.0)
             + math.log(n + 1.0))
    if log_y <= 0.0:
        return None
    return math.exp((1.0 - a) * (math.log(n + 1.0) - math.log(a - 1.0))
                    + a * math.log(log_y) - (a - 1.0) * math.log(pd))


def strip_norm_bound(decay: DecaySpec, d: float) -> float:
    """Closed-form upper bound on the strip norm ``N1(f, D_d)``.

    ``2 L min(2 / sinc(1/alpha), (2/d)**(alpha-1) B((alpha-1)/2, (alpha+1)/2))``;
    valid when ``|f(z)| <= L / (1 + |z|**alpha)`` throughout the strip.
    """
    return 2.0 * decay.big_l * stepsize.strip_beta(decay.alpha, d)


def strip_norm_bound_branches(decay: DecaySpec, d: float) -> tuple[float, float]:
    """Both one-line bounds doubled for the two boundary lines: (small-d, large-d)."""
    a, big_l = decay.alpha, decay.big_l
    small = 2.0 * big_l * 2.0 / sinc(1.0 / a)
    large = 2.0 * big_l * math.exp((a - 1.0) * math.log(2.0 / d)
                                   + log_beta(a / 2.0 - 0.5, a / 2.0 + 0.5))
    return small, large


def predicted_error(inp: StepRuleInput, rule, strip_norm: Optional[float] = None
                    ) -> PredictedError:
    """Assemble ``(h, E_N, c)`` for a step rule.

    ``strip_norm`` (``N1``) is required for ``w-optimized``; for ``w-exact``
    and ``log-approx`` it is only needed to report ``c``. For ``classical``
    the decay order is read as the exponential rate and ``c`` is unknown.
    """
    rule = Rule.parse(rule)
    a, d, big_l = inp.alpha, inp.d, inp.decay.big_l
    if strip_norm is None:
        strip_norm = inp.strip.strip_norm

    if rule is Rule.CLASSICAL:
        return PredictedError(stepsize.h_classical(a, d, inp.n_terms),
                              e_n_classical(a, d, inp.n_terms), None)
    if rule is Rule.W_EXACT:
        h = stepsize.h_w_exact(inp)
        c = None if strip_norm is None else c_one(a, d) * strip_norm + 2.0 * big_l
    elif rule is Rule.W_OPTIMIZED:
        if strip_norm is None:
            raise ValueError("rule w-optimized requires the strip norm N1")
        h = stepsize.h_w_optimized(inp, strip_norm)
        c = (c_one(a, d) + 2.0) * big_l
    elif rule is Rule.W_STRIP:
        h = stepsize.h_w_strip(inp)
        c = c_one(a, d) * big_l
    elif rule is Rule.LOG_APPROX:
        h = stepsize.h_log_approx(inp)
        c = (None if strip_norm is None else
             (a - 1.0) * (math.pi * d / (a * math.e)) ** a * strip_norm + 2.0 * big_l)
    else:
        raise ValueError(f"rule {rule.value!r} has no a priori envelope")
    return PredictedError(h, e_n_truncation_form(h, inp), c)
