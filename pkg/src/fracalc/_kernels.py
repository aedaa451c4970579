"""Backend selection for the hot kernels.

The compiled extension is preferred; the pure-Python module is used when the
extension was not built or ``FRACALC_PURE_PYTHON`` is set to a non-empty value.
"""

import os

if os.environ.get("FRACALC_PURE_PYTHON"):
    from fracalc import _pykernels as backend
else:
    try:
        from fracalc import _ckernels as backend
    except ImportError:  # extension not built
        from fracalc import _pykernels as backend

BACKEND = backend.BACKEND
lanczos_gamma = backend.lanczos_gamma
lanczos_ln_gamma = backend.lanczos_ln_gamma
sinpi = backend.sinpi
expr_value = backend.expr_value
expr_jacobi_sum = backend.expr_jacobi_sum

__all__ = [
    "BACKEND",
    "lanczos_gamma",
    "lanczos_ln_gamma",
    "sinpi",
    "expr_value",
    "expr_jacobi_sum",
]
