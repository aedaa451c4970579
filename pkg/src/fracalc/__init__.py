"""Fractional-order integrals and derivatives of real order.

Closed-form operators act on generalized polynomials and sin/cos terms
(:mod:`fracalc.symbolic`); numeric operators act on arbitrary functions via
singular-kernel quadrature (:mod:`fracalc.numeric`). Both rest on the gamma
family in :mod:`fracalc.special_fn`.
"""

from fracalc._kernels import BACKEND
from fracalc.errors import AccuracyWarning, DomainError, PoleError, PoleReport
from fracalc.numeric import (
    Evaluable,
    jacobi_rule,
    k_independence_check,
    nested_integral_oracle,
    rl_derivative,
    rl_integral,
)
from fracalc.parser import ParseError, format_expr, parse
from fracalc.special_fn import beta, gamma, genfactorial, ln_gamma, rgamma
from fracalc.symbolic import (
    GenExpr,
    PowerTerm,
    SignedOrder,
    TrigTerm,
    apply_expr,
    check_semigroup,
    frac_coeff,
    in_E,
)

__version__ = "0.1.0"
