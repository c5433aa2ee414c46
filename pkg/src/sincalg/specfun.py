"""Double-precision special functions used by the step-size rules.

Everything here is a pure function of its arguments. ``sinc`` accepts numpy
arrays so the cardinal series can share the kernel; the scalar functions
(`lambert_w0`, `log_gamma`, `beta`) work on Python floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DomainError",
    "WResult",
    "lambert_w0",
    "sinc",
    "log_gamma",
    "log_beta",
    "beta",
    "SINC_SERIES_THRESHOLD",
]


class DomainError(ValueError):
    """Argument outside the domain of a function."""


SINC_SERIES_THRESHOLD = 1e-4

_W_MAX_ITER = 8
_W_TOL = 1e-14


@dataclass(frozen=True)
class WResult:
    """Value of the positive Lambert-W branch with convergence metadata.

    ``residual`` is ``|w*exp(w) - x| / max(1, x)`` at the returned ``value``.
    """

    value: float
    iterations: int
    residual: float


def _w_residual(w: float, x: float) -> float:
    if w > 700.0:
        # w*exp(w) overflows; compare in log space
        return abs(math.expm1(w + math.log(w) - math.log(x))) * x / max(1.0, x)
    return abs(w * math.exp(w) - x) / max(1.0, x)


def lambert_w0(x: float) -> WResult:
    """Principal branch of the Lambert-W function on ``[0, inf)``.

    Solves ``w * exp(w) = x`` by Halley's method started from ``log1p(x)``.

    Parameters
    ----------
    x : float
        Non-negative finite argument.

    Returns
    -------
    WResult

    Raises
    ------
    DomainError
        If ``x`` is negative, NaN or infinite.
    """
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"lambert_w0 requires finite x >= 0, got {x!r}")
    if x == 0.0:
        return WResult(0.0, 0, 0.0)

    w = math.log1p(x)
    scale = max(1.0, x)
    it = 0
    big = x > 1e280
    logx = math.log(x)
    while it < _W_MAX_ITER:
        if big:
            # Newton on w + log(w) - log(x); w*exp(w) is not representable
            f = w + math.log(w) - logx
            dw = f / (1.0 + 1.0 / w)
        else:
            ew = math.exp(w)
            f = w * ew - x
            if abs(f) <= _W_TOL * scale:
                break
            wp1 = w + 1.0
            dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        it += 1
        if abs(dw) <= 4.0 * np.finfo(float).eps * abs(w):
            break
    return WResult(w, it, _w_residual(w, x))


def sinc(x):
    """Normalized sinc, ``sin(pi x) / (pi x)`` with ``sinc(0) == 1``.

    The argument is reduced by its nearest integer before ``sin`` is taken,
    so ``sinc(k)`` is exactly zero for nonzero integers ``k``. Below
    ``SINC_SERIES_THRESHOLD`` a three-term Taylor series is used.

    Accepts scalars or numpy arrays; returns the same shape.
    """
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    n = np.rint(x)
    r = x - n
    # sin(pi*x) = (-1)^n sin(pi*r); the sign is the parity of n
    sign = 1.0 - 2.0 * np.mod(n, 2.0)
    small = np.abs(x) < SINC_SERIES_THRESHOLD
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = sign * np.sin(np.pi * r) / (np.pi * x)
    px2 = (np.pi * x) ** 2
    series = 1.0 - px2 / 6.0 + px2 * px2 / 120.0
    out = np.where(small, series, direct)
    return float(out) if scalar else out


_EULER_GAMMA = 0.57721566490153286061

# zeta(k) - 1 for k = 2..31
_ZETA_MINUS_ONE = (
    0.64493406684822643647,
    0.2020569031595942854,
    0.082323233711138191516,
    0.036927755143369926331,
    0.017343061984449139715,
    0.0083492773819228268398,
    0.0040773561979443393787,
    0.0020083928260822144179,
    0.00099457512781808533715,
    0.0004941886041194645587,
    0.00024608655330804829864,
    0.00012271334757848914675,
    0.000061248135058704829259,
    0.000030588236307020493552,
    0.000015282259408651871733,
    7.6371976378997622736e-6,
    3.8172932649998398565e-6,
    1.9082127165539389257e-6,
    9.5396203387279611315e-7,
    4.7693298678780646312e-7,
    2.3845050272773299e-7,
    1.1921992596531107307e-7,
    5.9608189051259479612e-8,
    2.9803503514652280186e-8,
    1.4901554828365041235e-8,
    7.450711789835429492e-9,
    3.7253340247884570548e-9,
    1.8626597235130490064e-9,
    9.3132743241966818287e-10,
    4.656629065033784073e-10,
)

# B_2k / (2k (2k-1)), k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

_HALF_LOG_2PI = 0.91893853320467274178
_STIRLING_MIN = 13.0


def _lgamma_2pz(z: float) -> float:
    """ln Gamma(2 + z) for |z| <= 0.5 via the zeta series."""
    acc = 0.0
    zk = -z
    for k, c in enumerate(_ZETA_MINUS_ONE, start=2):
        zk *= -z
        acc += c * zk / k
    return (1.0 - _EULER_GAMMA) * z + acc


def _lgamma_stirling(x: float) -> float:
    inv = 1.0 / x
    inv2 = inv * inv
    corr = 0.0
    p = inv
    for c in _STIRLING:
        corr += c * p
        p *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + corr


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function for real ``x > 0``.

    Uses the zeta-function Taylor series of ``ln Gamma(2 + z)`` on
    ``[0.5, 2.5)`` (which keeps full relative accuracy at the zeros
    ``x = 1, 2``), upward recurrence into Stirling's series above, and
    ``ln Gamma(x) = ln Gamma(x + 1) - ln x`` below 0.5.
    """
    x = float(x)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"log_gamma requires finite x > 0, got {x!r}")
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    if x < 1.5:
        z = x - 1.0
        return _lgamma_2pz(z) - math.log1p(z)
    if x < 2.5:
        return _lgamma_2pz(x - 2.0)
    if x >= _STIRLING_MIN:
        return _lgamma_stirling(x)
    shift = math.ceil(_STIRLING_MIN - x)
    prod = 1.0
    for j in range(shift):
        prod *= x + j
    return _lgamma_stirling(x + shift) - math.log(prod)


def log_beta(a: float, b: float) -> float:
    """``ln B(a, b)``; see `beta`."""
    if not (a > 0.0 and b > 0.0):
        raise DomainError(f"beta requires a, b > 0, got a={a!r}, b={b!r}")
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def beta(a: float, b: float) -> float:
    """Euler beta function ``Gamma(a) Gamma(b) / Gamma(a + b)``."""
    return math.exp(log_beta(a, b))
