"""Gamma, reciprocal gamma, log-gamma, beta and the generalized factorial.

Gamma uses the Lanczos approximation (g = 7, nine coefficients) for arguments
of at least 1/2 and the reflection formula below that; positive integers are
returned as exactly rounded factorials and half-integers as an exact rational
times sqrt(pi). Arguments within
``POLE_TOL`` of a non-positive integer are treated as poles: :func:`gamma`
raises :class:`~fracalc.errors.PoleError` while :func:`rgamma` returns exactly
zero, which is what lets every operator coefficient be evaluated without a
case split.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from fracalc import _kernels
from fracalc.errors import DomainError, PoleError, PoleReport

POLE_TOL = 1e-12
# Gamma(171.62...) is the largest finite double
GAMMA_OVERFLOW = 171.6
SQRT_PI = math.sqrt(math.pi)

__all__ = [
    "POLE_TOL",
    "is_pole",
    "gamma",
    "rgamma",
    "ln_gamma",
    "gamma_sign",
    "ln_abs_gamma",
    "beta",
    "genfactorial",
]


def _check_finite(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


def is_pole(x: float) -> bool:
    """True when ``x`` is a non-positive integer to within ``POLE_TOL``."""
    n = round(x)
    return n <= 0 and abs(x - n) <= POLE_TOL


@lru_cache(maxsize=512)
def _half_integer_ratio(m: int) -> Fraction:
    # Gamma(m + 1/2) / sqrt(pi), exact for any integer m
    if m >= 0:
        return Fraction(math.factorial(2 * m), 4 ** m * math.factorial(m))
    k = -m
    return Fraction((-4) ** k * math.factorial(k), math.factorial(2 * k))


def _half_integer(x: float) -> Optional[int]:
    m = x - 0.5
    if m.is_integer() and abs(x) <= GAMMA_OVERFLOW:
        return int(m)
    return None


def gamma(x: float) -> float:
    """Euler's gamma function for real ``x``.

    Raises
    ------
    PoleError
        If ``x`` is (within tolerance) 0, -1, -2, ...
    OverflowError
        If the result exceeds the double range.
    """
    x = _check_finite(x)
    if is_pole(x):
        raise PoleError(PoleReport(int(round(x)), "gamma"))
    if x >= 0.5:
        if x > GAMMA_OVERFLOW:
            raise OverflowError(f"gamma({x}) overflows")
        if x.is_integer():
            return float(math.factorial(int(x) - 1))
    m = _half_integer(x)
    if m is not None:
        return SQRT_PI * float(_half_integer_ratio(m))
    if x >= 0.5:
        return _kernels.lanczos_gamma(x)
    # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    if 1.0 - x > GAMMA_OVERFLOW:
        sign = gamma_sign(x)
        return sign * math.exp(
            math.log(math.pi) - math.log(abs(_kernels.sinpi(x))) - ln_gamma(1.0 - x)
        )
    return math.pi / (_kernels.sinpi(x) * _kernels.lanczos_gamma(1.0 - x))


def rgamma(x: float) -> float:
    """Reciprocal gamma ``1/Gamma(x)``; exactly 0.0 at the poles of gamma."""
    x = _check_finite(x)
    if is_pole(x):
        return 0.0
    if x >= 0.5:
        if x > GAMMA_OVERFLOW:
            return math.exp(-ln_gamma(x))
        if x.is_integer():
            return 1.0 / math.factorial(int(x) - 1)
    m = _half_integer(x)
    if m is not None:
        return float(1 / _half_integer_ratio(m)) / SQRT_PI
    if x >= 0.5:
        return 1.0 / _kernels.lanczos_gamma(x)
    if 1.0 - x > GAMMA_OVERFLOW:
        return _kernels.sinpi(x) * math.exp(ln_gamma(1.0 - x) - math.log(math.pi))
    return _kernels.sinpi(x) * _kernels.lanczos_gamma(1.0 - x) / math.pi


def ln_gamma(x: float) -> float:
    """Natural log of Gamma(x) for ``x > 0``."""
    x = _check_finite(x)
    if x <= 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x}")
    if x == 1.0 or x == 2.0:
        return 0.0
    if x >= 0.5:
        return _kernels.lanczos_ln_gamma(x)
    return math.log(math.pi / _kernels.sinpi(x)) - _kernels.lanczos_ln_gamma(1.0 - x)


def gamma_sign(x: float) -> float:
    """Sign of Gamma(x) (0.0 at poles)."""
    if x > 0.0:
        return 1.0
    if is_pole(x):
        return 0.0
    # Gamma is negative on (-1, 0), (-3, -2), ...
    return -1.0 if math.floor(x) % 2 else 1.0


def ln_abs_gamma(x: float) -> float:
    """log|Gamma(x)| for any non-pole real ``x``."""
    x = _check_finite(x)
    if is_pole(x):
        raise PoleError(PoleReport(int(round(x)), "ln_abs_gamma"))
    if x > 0.0:
        return ln_gamma(x)
    return (
        math.log(math.pi)
        - math.log(abs(_kernels.sinpi(x)))
        - _kernels.lanczos_ln_gamma(1.0 - x)
    )


def beta(p: float, q: float) -> float:
    """Euler's beta function B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q)."""
    p = _check_finite(p, "p")
    q = _check_finite(q, "q")
    if p <= 0.0 or q <= 0.0:
        raise DomainError(f"beta requires p > 0 and q > 0, got ({p}, {q})")
    if p + q > GAMMA_OVERFLOW:
        return math.exp(ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q))
    return gamma(p) * gamma(q) * rgamma(p + q)


def genfactorial(p: float) -> float:
    """Generalized factorial ``p! = Gamma(p + 1)``; poles at p = -1, -2, ..."""
    p = _check_finite(p, "p")
    try:
        return gamma(p + 1.0)
    except PoleError as exc:
        raise PoleError(PoleReport(exc.report.location - 1, "genfactorial")) from None
