# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping kernels. Must stay bit-compatible in intent with _kernels_py."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, fabs, isfinite

cnp.import_array()


def leapfrog(const double[::1] zp, const double[::1] zc, const double[::1] r, double h,
             double iota, Py_ssize_t nsteps, bint neumann, double cap,
             const double[::1] src=None, double[::1] bnd=None):
    cdef Py_ssize_t n = zc.shape[0]
    cdef Py_ssize_t i, k, last = n - 1
    cdef double h2 = h * h
    cdef double q = exp(-h)
    cdef double z, z2, s, s0, s1, d0, d1, d2, al
    cdef bint blew = False
    cdef double[::1] a = np.array(zp, dtype=np.float64)
    cdef double[::1] b = np.array(zc, dtype=np.float64)
    cdef double[::1] c = np.empty(n, dtype=np.float64)
    cdef double[::1] tmp
    cdef double[::1] inv_r4 = np.empty(n, dtype=np.float64)
    cdef bint has_src = src is not None

    for i in range(n):
        inv_r4[i] = 1.0 / (r[i] * r[i] * r[i] * r[i]) if r[i] > 0.0 else 0.0

    k = 0
    while k < nsteps:
        for i in range(1, last):
            z = b[i]
            z2 = z * z
            s = -iota * z2 * z2 * z * inv_r4[i]
            if has_src:
                s = s + src[i]
            c[i] = b[i - 1] + b[i + 1] - a[i] + h2 * s
        if neumann:
            # d/dt zeta + zeta = 2*alpha at r = 1; alpha = incoming derivative
            # from diagonal differences, fourth order; the source shifts alpha
            # by h S / 6 (transport of the diagonal averages to the boundary)
            d0 = b[1] - a[0]
            d1 = c[1] - b[0]
            d2 = c[2] - b[1]
            z2 = b[0] * b[0]
            s0 = -iota * z2 * z2 * b[0] * inv_r4[0]
            z2 = b[1] * b[1]
            s1 = -iota * z2 * z2 * b[1] * inv_r4[1]
            if has_src:
                s0 = s0 + src[0]
                s1 = s1 + src[1]
            al = d1 / (2.0 * h) - (d2 - 2.0 * d1 + d0) / (12.0 * h) + h * (2.0 * s0 + s1) / 18.0
            c[0] = q * b[0] + 2.0 * (bnd[2] * bnd[0] + bnd[3] * bnd[1] + bnd[4] * al)
            bnd[0] = bnd[1]
            bnd[1] = al
        else:
            c[0] = 0.0
        c[last] = b[last - 1]
        k += 1
        for i in range(n):
            if not isfinite(c[i]) or fabs(c[i]) > cap * r[i] and r[i] > 0.0:
                blew = True
                break
        tmp = a
        a = b
        b = c
        c = tmp
        if blew:
            break
    return np.asarray(a), np.asarray(b), k, blew


def exp_recurrence(const double[::1] g, double h):
    cdef Py_ssize_t n = g.shape[0]
    cdef Py_ssize_t k
    cdef double q = exp(-h)
    cdef double half = 0.5 * h
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] o = out
    for k in range(n - 1):
        o[k + 1] = q * o[k] + half * (q * g[k] + g[k + 1])
    return out
