"""Truncated cardinal series ``C_N{f, h}`` and its discrete error norm."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .specfun import sinc

__all__ = [
    "Rule",
    "DecaySpec",
    "StripSpec",
    "TargetFunction",
    "InterpolationPlan",
    "SampledInterpolant",
    "EvaluationError",
    "sample",
    "evaluate",
    "grid",
    "discrete_error",
]


class Rule(str, enum.Enum):
    """Step-size rule that produced an `InterpolationPlan`."""

    CLASSICAL = "classical"
    W_EXACT = "w-exact"
    W_OPTIMIZED = "w-optimized"
    W_STRIP = "w-strip"
    LOG_APPROX = "log-approx"
    MANUAL = "manual"

    @classmethod
    def parse(cls, value) -> "Rule":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(
            f"unknown rule {value!r}; expected one of "
            + ", ".join(m.value for m in cls)
        )


class EvaluationError(ArithmeticError):
    """The target function produced a non-finite value at a node."""


@dataclass(frozen=True)
class DecaySpec:
    """Algebraic decay ``|f(x)| <= big_l / (1 + |x|**alpha)``."""

    alpha: float
    big_l: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 1.0):
            raise ValueError(f"decay order alpha must be > 1, got {self.alpha!r}")
        if not (math.isfinite(self.big_l) and self.big_l > 0.0):
            raise ValueError(f"decay constant L must be > 0, got {self.big_l!r}")


@dataclass(frozen=True)
class StripSpec:
    """Half-width ``d`` of the analyticity strip, optionally with its strip norm."""

    half_width: float
    strip_norm: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.half_width) and self.half_width > 0.0):
            raise ValueError(f"strip half-width d must be > 0, got {self.half_width!r}")
        if self.strip_norm is not None and not self.strip_norm > 0.0:
            raise ValueError(f"strip norm must be > 0, got {self.strip_norm!r}")


@dataclass(frozen=True)
class TargetFunction:
    """A real function bundled with its decay and strip parameters.

    Calling the target evaluates ``evaluator``; the cardinal routines accept
    any callable, so a bare function works too when no metadata is needed.
    """

    evaluator: Callable
    decay: DecaySpec
    strip: StripSpec

    def __call__(self, x):
        return self.evaluator(x)


@dataclass(frozen=True)
class InterpolationPlan:
    """Number of terms ``N`` and step ``h`` of one interpolant."""

    n_terms: int
    step: float
    rule: Rule = Rule.MANUAL

    def __post_init__(self):
        if int(self.n_terms) != self.n_terms or self.n_terms < 0:
            raise ValueError(f"n_terms must be a non-negative integer, got {self.n_terms!r}")
        if not (math.isfinite(self.step) and self.step > 0.0):
            raise ValueError(f"step must be finite and > 0, got {self.step!r}")
        object.__setattr__(self, "n_terms", int(self.n_terms))
        object.__setattr__(self, "step", float(self.step))
        object.__setattr__(self, "rule", Rule.parse(self.rule))

    @property
    def nodes(self) -> np.ndarray:
        k = np.arange(-self.n_terms, self.n_terms + 1, dtype=float)
        return k * self.step


@dataclass(frozen=True)
class SampledInterpolant:
    """Node values ``f(k h)``, ``k = -N..N``, of a plan."""

    plan: InterpolationPlan
    samples: np.ndarray

    def __post_init__(self):
        s = np.array(self.samples, dtype=float)
        if s.shape != (2 * self.plan.n_terms + 1,):
            raise ValueError(
                f"expected {2 * self.plan.n_terms + 1} samples, got shape {s.shape}"
            )
        if not np.all(np.isfinite(s)):
            raise EvaluationError("samples must all be finite")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    def __call__(self, x):
        return evaluate(self, x)


def _eval_real(f: Callable, x: np.ndarray) -> np.ndarray:
    y = np.asarray(f(x))
    if np.iscomplexobj(y):
        y = y.real
    return np.broadcast_to(np.asarray(y, dtype=float), x.shape)


def sample(f: Callable, plan: InterpolationPlan) -> SampledInterpolant:
    """Evaluate ``f`` at the nodes ``k h``, ``k = -N..N``.

    Raises
    ------
    EvaluationError
        If ``f`` is non-finite at a node; the message names the node.
    """
    x = plan.nodes
    y = _eval_real(f, x)
    bad = np.flatnonzero(~np.isfinite(y))
    if bad.size:
        j = int(bad[0])
        k = j - plan.n_terms
        raise EvaluationError(
            f"non-finite value {y[j]!r} at node k={k} (x={x[j]!r})"
        )
    return SampledInterpolant(plan, np.array(y, dtype=float))


def evaluate(ip: SampledInterpolant, x):
    """Value of the cardinal series at ``x`` (scalar or array).

    Terms are added for ``k = -N, ..., N`` in that order with Neumaier
    compensated summation, independently for every point.
    """
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    h = ip.plan.step
    n = ip.plan.n_terms
    t = x / h
    total = np.zeros_like(t)
    comp = np.zeros_like(t)
    for j, fk in enumerate(ip.samples):
        if fk == 0.0:
            continue
        term = fk * sinc(t - (j - n))
        s = total + term
        big = np.abs(total) >= np.abs(term)
        comp += np.where(big, (total - s) + term, (term - s) + total)
        total = s
    out = total + comp
    return float(out[0]) if scalar else out


def grid(plan: InterpolationPlan) -> np.ndarray:
    """Evaluation grid ``j h / 2``, ``j = -2N..2N`` (ascending)."""
    j = np.arange(-2 * plan.n_terms, 2 * plan.n_terms + 1, dtype=float)
    return j * (plan.step / 2.0)


def discrete_error(f: Callable, plan: InterpolationPlan,
                   points: Optional[Sequence[float]] = None) -> float:
    """Max of ``|f(x) - C_N{f, h}(x)|`` over `grid` (or over ``points``)."""
    ip = sample(f, plan)
    x = grid(plan) if points is None else np.asarray(points, dtype=float)
    fx = _eval_real(f, x)
    if not np.all(np.isfinite(fx)):
        raise EvaluationError("target function is non-finite on the error grid")
    return float(np.max(np.abs(fx - evaluate(ip, x))))
