"""Pure-NumPy versions of the stepping kernels.

Used when the compiled extension is unavailable or ``WAVELAB_PURE=1`` is set.
The signatures and return conventions match ``_kernels.pyx``.
"""

import numpy as np
from scipy.signal import lfilter


def leapfrog(zp, zc, r, h, iota, nsteps, neumann, cap, src=None, bnd=None):
    """Advance the unit-Courant leapfrog for zeta = r*u by up to ``nsteps`` steps.

    Returns ``(previous, current, steps_taken, blew_up)``. Stepping stops early
    on the first level where ``|u| > cap`` or a non-finite value appears; that
    level is returned as ``current``.

    With ``neumann`` set, ``bnd`` holds ``[alpha_{n-1}, alpha_n, w_m, w_0, w_p]``:
    the last two boundary values of the incoming derivative (updated in place)
    and the exponential quadrature weights of ``boundary_weights``.
    """
    a = np.array(zp, dtype=np.float64)
    b = np.array(zc, dtype=np.float64)
    r = np.asarray(r, dtype=np.float64)
    h2 = h * h
    q = np.exp(-h)
    with np.errstate(divide="ignore"):
        inv_r4 = np.where(r > 0.0, 1.0 / r**4, 0.0)
    pos = r > 0.0
    bound = cap * r
    k = 0
    blew = False
    with np.errstate(over="ignore", invalid="ignore"):
        while k < nsteps:
            s = -iota * b**5 * inv_r4
            if src is not None:
                s = s + src
            c = np.empty_like(b)
            c[1:-1] = b[:-2] + b[2:] - a[1:-1] + h2 * s[1:-1]
            if neumann:
                # d/dt zeta + zeta = 2*alpha at r = 1; alpha = incoming derivative
                # from diagonal differences, fourth order; the source shifts alpha
                # by h S / 6 (transport of the diagonal averages to the boundary)
                d0 = b[1] - a[0]
                d1 = c[1] - b[0]
                d2 = c[2] - b[1]
                al = d1 / (2.0 * h) - (d2 - 2.0 * d1 + d0) / (12.0 * h) + h * (2.0 * s[0] + s[1]) / 18.0
                c[0] = q * b[0] + 2.0 * (bnd[2] * bnd[0] + bnd[3] * bnd[1] + bnd[4] * al)
                bnd[0] = bnd[1]
                bnd[1] = al
            else:
                c[0] = 0.0
            c[-1] = b[-2]
            k += 1
            a, b = b, c
            if not np.all(np.isfinite(c)) or np.any((np.abs(c) > bound) & pos):
                blew = True
                break
    return a, b, k, blew


def exp_recurrence(g, h):
    """Cumulative kernel ``K[k] = int_0^{kh} exp(x - kh) g(x) dx`` by trapezoid steps."""
    g = np.asarray(g, dtype=np.float64)
    out = np.zeros_like(g)
    if g.size < 2:
        return out
    q = np.exp(-h)
    inc = 0.5 * h * (q * g[:-1] + g[1:])
    out[1:] = lfilter([1.0], [1.0, -q], inc)
    return out
