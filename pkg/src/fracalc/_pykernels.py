"""Pure-Python implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable or when
``FRACALC_PURE_PYTHON`` is set. Every function here has an identically named
counterpart in ``_ckernels.pyx`` with the same floating-point operation order.
"""

import math

LANCZOS_G = 7.0
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
SQRT_2PI = 2.5066282746310002
HALF_LOG_2PI = 0.91893853320467274

BACKEND = "python"


def _lanczos_sum(z):
    a = LANCZOS_COEFFS[0]
    for i in range(1, 9):
        a += LANCZOS_COEFFS[i] / (z + i)
    return a


def lanczos_gamma(x):
    """Gamma(x) for x >= 0.5 (no argument checking)."""
    z = x - 1.0
    t = z + LANCZOS_G + 0.5
    a = _lanczos_sum(z)
    # split the power so t**(z+0.5) cannot overflow before exp(-t) scales it
    tp = t ** ((z + 0.5) * 0.5)
    return SQRT_2PI * a * tp * math.exp(-t) * tp


def lanczos_ln_gamma(x):
    """log Gamma(x) for x >= 0.5 (no argument checking)."""
    z = x - 1.0
    t = z + LANCZOS_G + 0.5
    a = _lanczos_sum(z)
    return HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(a)


def sinpi(x):
    """sin(pi*x) with exact argument reduction, so zeros land on integers."""
    n = round(x)
    r = x - n
    v = math.sin(math.pi * r)
    if n % 2:
        v = -v
    return v


def _term_sum(y, pexp, pcoef, tkind, tphase, tcoef):
    acc = 0.0
    for j in range(len(pexp)):
        if y == 0.0 and pexp[j] < 0.0:
            acc += pcoef[j] * math.inf
        else:
            acc += pcoef[j] * y ** pexp[j]
    for j in range(len(tkind)):
        if tkind[j] == 0:
            acc += tcoef[j] * math.sin(y + tphase[j])
        else:
            acc += tcoef[j] * math.cos(y + tphase[j])
    return acc


def expr_value(x, pexp, pcoef, tkind, tphase, tcoef):
    """Value of sum(c*x**k) + sum(c*trig(x + phase)) at a scalar x."""
    return _term_sum(
        x, list(pexp), list(pcoef), list(tkind), list(tphase), list(tcoef)
    )


def expr_jacobi_sum(nodes, weights, x, s, pexp, pcoef, tkind, tphase, tcoef):
    """Quadrature sum of the kernel integral for a packed expression.

    Uses the substitution u = v**4, under which (1 - u)**(s-1) du becomes
    (1 - v)**(s-1) * 4 v**3 ((1 + v)(1 + v**2))**(s-1) dv. The first factor
    is carried by ``weights``.
    """
    pexp = list(pexp)
    pcoef = list(pcoef)
    tkind = list(tkind)
    tphase = list(tphase)
    tcoef = list(tcoef)
    sm1 = s - 1.0
    total = 0.0
    for v, w in zip(list(nodes), list(weights)):
        v2 = v * v
        fy = _term_sum(v2 * v2 * x, pexp, pcoef, tkind, tphase, tcoef)
        total += w * (4.0 * v2 * v * ((1.0 + v) * (1.0 + v2)) ** sm1) * fy
    return total
