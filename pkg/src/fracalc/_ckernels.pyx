# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_pykernels`` for the contract."""

from libc.math cimport exp, log, sin, cos, pow, M_PI, INFINITY, round as c_round

cdef double LANCZOS_G = 7.0
cdef double[9] LANCZOS_COEFFS
LANCZOS_COEFFS[:] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
]
cdef double SQRT_2PI = 2.5066282746310002
cdef double HALF_LOG_2PI = 0.91893853320467274

BACKEND = "cython"


cdef inline double _lanczos_sum(double z) nogil:
    cdef double a = LANCZOS_COEFFS[0]
    cdef int i
    for i in range(1, 9):
        a += LANCZOS_COEFFS[i] / (z + i)
    return a


cpdef double lanczos_gamma(double x):
    cdef double z = x - 1.0
    cdef double t = z + LANCZOS_G + 0.5
    cdef double a = _lanczos_sum(z)
    cdef double tp = pow(t, (z + 0.5) * 0.5)
    return SQRT_2PI * a * tp * exp(-t) * tp


cpdef double lanczos_ln_gamma(double x):
    cdef double z = x - 1.0
    cdef double t = z + LANCZOS_G + 0.5
    cdef double a = _lanczos_sum(z)
    return HALF_LOG_2PI + (z + 0.5) * log(t) - t + log(a)


cpdef double sinpi(double x):
    # tie-breaking differs from Python's round(); sin is odd so the value does not
    cdef double n = c_round(x)
    cdef double r = x - n
    cdef double v = sin(M_PI * r)
    if (<long long> n) % 2 != 0:
        v = -v
    return v


cdef inline double _term_sum(double y, const double[::1] pexp,
                             const double[::1] pcoef, const long[::1] tkind,
                             const double[::1] tphase,
                             const double[::1] tcoef) nogil:
    cdef double acc = 0.0
    cdef Py_ssize_t j
    for j in range(pexp.shape[0]):
        if y == 0.0 and pexp[j] < 0.0:
            acc += pcoef[j] * INFINITY
        else:
            acc += pcoef[j] * pow(y, pexp[j])
    for j in range(tkind.shape[0]):
        if tkind[j] == 0:
            acc += tcoef[j] * sin(y + tphase[j])
        else:
            acc += tcoef[j] * cos(y + tphase[j])
    return acc


def expr_value(double x, const double[::1] pexp, const double[::1] pcoef,
               const long[::1] tkind, const double[::1] tphase,
               const double[::1] tcoef):
    return _term_sum(x, pexp, pcoef, tkind, tphase, tcoef)


def expr_jacobi_sum(const double[::1] nodes, const double[::1] weights,
                    double x, double s, const double[::1] pexp,
                    const double[::1] pcoef, const long[::1] tkind,
                    const double[::1] tphase, const double[::1] tcoef):
    cdef double sm1 = s - 1.0
    cdef double total = 0.0
    cdef double v, v2, fy
    cdef Py_ssize_t i
    with nogil:
        for i in range(nodes.shape[0]):
            v = nodes[i]
            v2 = v * v
            fy = _term_sum(v2 * v2 * x, pexp, pcoef, tkind, tphase, tcoef)
            total += weights[i] * (4.0 * v2 * v * pow((1.0 + v) * (1.0 + v2), sm1)) * fy
    return total
