"""Backend selection for the hot loops.

The compiled extension is preferred; set ``WAVELAB_PURE=1`` to force the
NumPy fallback (the test-suite runs both).
"""

import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
if os.environ.get("WAVELAB_PURE") != "1":
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

leapfrog = _impl.leapfrog
exp_recurrence = _impl.exp_recurrence


def boundary_weights(h: float) -> np.ndarray:
    """Weights ``(w_m, w_0, w_p)`` with ``int_0^h e^(x-h) p(x) dx = w_m p(-h) + w_0 p(0) + w_p p(h)``
    exact for quadratics ``p``."""
    x, w = np.polynomial.legendre.leggauss(8)
    x = 0.5 * h * (x + 1.0)
    w = 0.5 * h * w * np.exp(x - h)
    lm = x * (x - h) / (2.0 * h * h)
    l0 = -(x + h) * (x - h) / (h * h)
    lp = x * (x + h) / (2.0 * h * h)
    return np.array([w @ lm, w @ l0, w @ lp])


__all__ = ["BACKEND", "leapfrog", "exp_recurrence", "boundary_weights"]
