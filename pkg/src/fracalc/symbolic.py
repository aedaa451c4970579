"""Closed-form fractional operators on generalized polynomials and sin/cos.

A single signed order ``alpha`` covers both operator families: ``alpha > 0``
is the derivative D^alpha, ``alpha < 0`` the integral J^-alpha and
``alpha == 0`` the identity. On a power term the operator acts as

    D^alpha (c x^p) = c * Gamma(p + 1) / Gamma(p - alpha + 1) * x^(p - alpha)

and on a trig term it shifts the phase by ``alpha * pi / 2``.

Composition convention: ``apply_expr(apply_expr(f, a), b)`` is D^b D^a f.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Union

import numpy as np

from fracalc import _kernels
from fracalc.errors import DomainError
from fracalc.special_fn import (
    GAMMA_OVERFLOW,
    genfactorial,
    is_pole,
    gamma_sign,
    ln_abs_gamma,
    ln_gamma,
    rgamma,
)

EXPONENT_FLOOR = -1.0
EXPONENT_MARGIN = 1e-12
MERGE_TOL = 1e-12
PHASE_TOL = 1e-12
TWO_PI = 2.0 * math.pi

__all__ = [
    "SignedOrder",
    "TrigBase",
    "PowerTerm",
    "TrigTerm",
    "GenExpr",
    "SemigroupReport",
    "frac_coeff",
    "apply_power",
    "apply_trig",
    "apply_expr",
    "in_E",
    "check_semigroup",
    "expr_deviation",
]


@dataclass(frozen=True)
class SignedOrder:
    """Operator order; positive for derivatives, negative for integrals."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a):
            raise DomainError(f"order must be finite, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @classmethod
    def derivative(cls, s: float) -> "SignedOrder":
        return cls(s)

    @classmethod
    def integral(cls, s: float) -> "SignedOrder":
        return cls(-s)

    @property
    def is_identity(self) -> bool:
        return self.alpha == 0.0

    def __add__(self, other: "SignedOrder") -> "SignedOrder":
        return SignedOrder(self.alpha + _as_order(other).alpha)

    def __neg__(self) -> "SignedOrder":
        return SignedOrder(-self.alpha)

    def __str__(self) -> str:
        if self.alpha > 0:
            return f"D^{self.alpha!r}"
        if self.alpha < 0:
            return f"J^{-self.alpha!r}"
        return "1_E"


OrderLike = Union[SignedOrder, float, int]


def _as_order(order: OrderLike) -> SignedOrder:
    return order if isinstance(order, SignedOrder) else SignedOrder(order)


class TrigBase(str, enum.Enum):
    SIN = "sin"
    COS = "cos"


@dataclass(frozen=True)
class PowerTerm:
    """``coeff * x**exponent`` with ``exponent > -1``."""

    coeff: float
    exponent: float

    def __post_init__(self):
        c, k = float(self.coeff), float(self.exponent)
        if not math.isfinite(c):
            raise DomainError(f"coefficient must be finite, got {self.coeff!r}")
        if not math.isfinite(k) or k <= EXPONENT_FLOOR + EXPONENT_MARGIN:
            raise DomainError(f"exponent must exceed -1, got {self.exponent!r}")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "exponent", k)


def _reduce_phase(phase: float) -> float:
    r = math.fmod(phase, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r < PHASE_TOL or TWO_PI - r < PHASE_TOL:
        return 0.0
    return r


@dataclass(frozen=True)
class TrigTerm:
    """``coeff * base(x + phase)``; phase is kept in [0, 2*pi)."""

    coeff: float
    base: TrigBase
    phase: float = 0.0

    def __post_init__(self):
        c, p = float(self.coeff), float(self.phase)
        if not math.isfinite(c) or not math.isfinite(p):
            raise DomainError("trig coefficient and phase must be finite")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "base", TrigBase(self.base))
        object.__setattr__(self, "phase", _reduce_phase(p))

    def value_at_zero(self) -> float:
        fn = math.sin if self.base is TrigBase.SIN else math.cos
        return self.coeff * fn(self.phase)


def _phase_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def _merge_powers(terms: Iterable[PowerTerm]) -> tuple:
    ordered = sorted(terms, key=lambda t: t.exponent)
    out = []
    group_exp = None
    acc = 0.0
    for t in ordered:
        if group_exp is not None and t.exponent - group_exp <= MERGE_TOL:
            acc += t.coeff
            continue
        if group_exp is not None and acc != 0.0:
            out.append(PowerTerm(acc, group_exp))
        group_exp, acc = t.exponent, t.coeff
    if group_exp is not None and acc != 0.0:
        out.append(PowerTerm(acc, group_exp))
    return tuple(out)


def _merge_trig(terms: Iterable[TrigTerm]) -> tuple:
    ordered = sorted(terms, key=lambda t: (t.base.value, t.phase))
    out = []
    cur = None
    for t in ordered:
        if (
            cur is not None
            and t.base is cur.base
            and _phase_distance(t.phase, cur.phase) <= PHASE_TOL
        ):
            cur = TrigTerm(cur.coeff + t.coeff, cur.base, cur.phase)
            continue
        if cur is not None and cur.coeff != 0.0:
            out.append(cur)
        cur = t
    if cur is not None and cur.coeff != 0.0:
        out.append(cur)
    return tuple(out)


@dataclass(frozen=True)
class GenExpr:
    """Finite sum of power terms and sin/cos terms in canonical form.

    Power terms are sorted by ascending exponent with near-equal exponents
    merged; trig terms are sorted by (base, phase). Zero terms are dropped.
    Build instances with :meth:`from_terms` to get the canonical form.
    """

    power_terms: tuple = ()
    trig_terms: tuple = ()

    @classmethod
    def from_terms(cls, power_terms=(), trig_terms=()) -> "GenExpr":
        return cls(_merge_powers(power_terms), _merge_trig(trig_terms))

    @classmethod
    def power(cls, coeff: float = 1.0, exponent: float = 1.0) -> "GenExpr":
        return cls.from_terms([PowerTerm(coeff, exponent)])

    @classmethod
    def constant(cls, value: float) -> "GenExpr":
        return cls.from_terms([PowerTerm(value, 0.0)])

    @classmethod
    def trig(cls, base, coeff: float = 1.0, phase: float = 0.0) -> "GenExpr":
        return cls.from_terms(trig_terms=[TrigTerm(coeff, base, phase)])

    @property
    def is_zero(self) -> bool:
        return not self.power_terms and not self.trig_terms

    def __add__(self, other: "GenExpr") -> "GenExpr":
        if not isinstance(other, GenExpr):
            return NotImplemented
        return GenExpr.from_terms(
            self.power_terms + other.power_terms, self.trig_terms + other.trig_terms
        )

    def scale(self, factor: float) -> "GenExpr":
        return GenExpr.from_terms(
            [PowerTerm(t.coeff * factor, t.exponent) for t in self.power_terms],
            [TrigTerm(t.coeff * factor, t.base, t.phase) for t in self.trig_terms],
        )

    @cached_property
    def packed(self) -> tuple:
        """Contiguous arrays consumed by the kernels."""
        return (
            np.array([t.exponent for t in self.power_terms], dtype=np.float64),
            np.array([t.coeff for t in self.power_terms], dtype=np.float64),
            np.array(
                [0 if t.base is TrigBase.SIN else 1 for t in self.trig_terms],
                dtype=np.int64,
            ),
            np.array([t.phase for t in self.trig_terms], dtype=np.float64),
            np.array([t.coeff for t in self.trig_terms], dtype=np.float64),
        )

    def __call__(self, x):
        """Evaluate at a scalar or at every element of an array."""
        if np.ndim(x) == 0:
            return _kernels.expr_value(float(x), *self.packed)
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros_like(x)
        with np.errstate(divide="ignore"):
            for t in self.power_terms:
                out += t.coeff * np.power(x, t.exponent)
        for t in self.trig_terms:
            fn = np.sin if t.base is TrigBase.SIN else np.cos
            out += t.coeff * fn(x + t.phase)
        return out


def frac_coeff(p: float, alpha: float) -> float:
    """Coefficient ``Gamma(p + 1) / Gamma(p - alpha + 1)`` of D^alpha x^p.

    Zero when ``p - alpha + 1`` is a pole of gamma; exactly 1 when alpha is 0.
    """
    p, alpha = float(p), float(alpha)
    if p <= EXPONENT_FLOOR:
        raise DomainError(f"frac_coeff requires p > -1, got {p}")
    if alpha == 0.0:
        return 1.0
    q = p - alpha + 1.0
    if is_pole(q):
        return 0.0
    if p + 1.0 > GAMMA_OVERFLOW or abs(q) > GAMMA_OVERFLOW:
        return gamma_sign(q) * math.exp(ln_gamma(p + 1.0) - ln_abs_gamma(q))
    return genfactorial(p) * rgamma(q)


def apply_power(term: PowerTerm, order: OrderLike) -> Optional[PowerTerm]:
    """Apply D^alpha to one power term.

    Returns ``None`` when the gamma-pole convention annihilates the term
    (e.g. D^1 of a constant). Raises :class:`DomainError` if the result
    would have a non-zero coefficient and exponent <= -1.
    """
    alpha = _as_order(order).alpha
    if alpha == 0.0:
        return term
    c = frac_coeff(term.exponent, alpha)
    if c == 0.0:
        return None
    k = term.exponent - alpha
    if k <= EXPONENT_FLOOR + EXPONENT_MARGIN:
        raise DomainError(
            f"{_as_order(order)} maps x^{term.exponent!r} to x^{k!r}; "
            "exponent must stay above -1"
        )
    return PowerTerm(term.coeff * c, k)


def apply_trig(term: TrigTerm, order: OrderLike) -> TrigTerm:
    """Shift the phase of a sin/cos term by ``alpha * pi / 2``."""
    alpha = _as_order(order).alpha
    if alpha == 0.0:
        return term
    return TrigTerm(term.coeff, term.base, term.phase + alpha * math.pi / 2.0)


def apply_expr(expr: GenExpr, order: OrderLike) -> GenExpr:
    """Apply D^alpha term by term and renormalize."""
    order = _as_order(order)
    powers = []
    for t in expr.power_terms:
        try:
            out = apply_power(t, order)
        except DomainError as exc:
            raise DomainError(f"term {t.coeff!r}*x^{t.exponent!r}: {exc}") from None
        if out is not None:
            powers.append(out)
    trig = [apply_trig(t, order) for t in expr.trig_terms]
    return GenExpr.from_terms(powers, trig)


def in_E(expr: GenExpr) -> bool:
    """Whether every term vanishes at the origin (membership in the domain E)."""
    if any(t.exponent <= 0.0 for t in expr.power_terms):
        return False
    return all(
        abs(t.value_at_zero()) <= PHASE_TOL * abs(t.coeff) for t in expr.trig_terms
    )


@dataclass(frozen=True)
class SemigroupReport:
    a: float
    b: float
    deviation: float
    tolerance: float = 1e-12
    paths: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tolerance


def _apply_no_pole(expr: GenExpr, alpha: float, label: str) -> GenExpr:
    if alpha != 0.0:
        for t in expr.power_terms:
            if is_pole(t.exponent - alpha + 1.0):
                raise DomainError(
                    f"{label}: x^{t.exponent!r} hits a gamma pole under order {alpha!r}"
                )
    try:
        return apply_expr(expr, alpha)
    except DomainError as exc:
        raise DomainError(f"{label}: {exc}") from None


def expr_deviation(lhs: GenExpr, rhs: GenExpr) -> float:
    """Largest relative coefficient (or absolute phase) gap between two
    expressions; ``inf`` when their term structure differs."""
    if len(lhs.power_terms) != len(rhs.power_terms) or len(lhs.trig_terms) != len(
        rhs.trig_terms
    ):
        return math.inf
    dev = 0.0
    for u, v in zip(lhs.power_terms, rhs.power_terms):
        if abs(u.exponent - v.exponent) > MERGE_TOL:
            return math.inf
        scale = max(abs(u.coeff), abs(v.coeff))
        dev = max(dev, abs(u.coeff - v.coeff) / scale)
    for u, v in zip(lhs.trig_terms, rhs.trig_terms):
        if u.base is not v.base:
            return math.inf
        scale = max(abs(u.coeff), abs(v.coeff))
        dev = max(dev, abs(u.coeff - v.coeff) / scale, _phase_distance(u.phase, v.phase))
    return dev


def check_semigroup(
    expr: GenExpr, a: float, b: float, tolerance: float = 1e-12
) -> SemigroupReport:
    """Compare D^b D^a, D^a D^b and D^(a+b) on ``expr``.

    Raises :class:`DomainError` naming the composition ("a then b",
    "b then a" or "a+b") whose application leaves the power-term domain or
    crosses a gamma pole.
    """
    a, b = float(a), float(b)
    ab = _apply_no_pole(_apply_no_pole(expr, a, "a then b"), b, "a then b")
    ba = _apply_no_pole(_apply_no_pole(expr, b, "b then a"), a, "b then a")
    direct = _apply_no_pole(expr, a + b, "a+b")
    dev = max(
        expr_deviation(ab, direct),
        expr_deviation(ba, direct),
        expr_deviation(ab, ba),
    )
    return SemigroupReport(
        a, b, dev, tolerance, paths={"a then b": ab, "b then a": ba, "a+b": direct}
    )
