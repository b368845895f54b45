"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
kernels are loaded. Setting ``SIMPLEX_METRICS_PURE=1`` forces the fallback.
"""

import os

if os.environ.get("SIMPLEX_METRICS_PURE", "") not in ("", "0"):
    from ._pykernels import bareiss_det, poly_mul, poly_mul_graded

    BACKEND = "python"
else:
    try:
        from ._ckernels import bareiss_det, poly_mul, poly_mul_graded

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._pykernels import bareiss_det, poly_mul, poly_mul_graded

        BACKEND = "python"

__all__ = ["BACKEND", "bareiss_det", "poly_mul", "poly_mul_graded"]
