"""Exact linear flows through characteristic functions.

A radial linear wave written as ``zeta = r*u`` splits into an outgoing and an
incoming profile, ``zeta(t, r) = phi_plus(r - t) + phi_minus(r + t)``. For the
exterior Neumann problem both profiles are known in closed form from the data;
the reflection at r = 1 adds an exponential memory kernel. For the free flow on
R^3 the same representation holds with the odd extensions of ``r*u_0`` and
``r*u_1`` through the origin.

Everything here samples the profiles on a uniform s-mesh with the spacing of
the data grid, so evaluation at times that are multiples of h is exact up to
the trapezoid error of the running integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_trapezoid

from . import kernels
from .core import RadialGrid, RadialState, d_dr
from .errors import (
    HorizonExceedsGrid,
    NegativeTime,
    NonIntegrableField,
    TimeOutOfHorizon,
    WrongDomain,
)

# Edge values below this (relative to the data scale) count as "quiet": the
# profiles are then continued as constants beyond the sampled range.
QUIET_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class CharPair:
    """Sampled characteristic profiles on ``s_j = s_min + j*h``.

    ``static_hi``/``static_lo`` allow constant continuation of the profiles
    above ``s_max``/below ``s_min`` (data that are static there); otherwise
    evaluation outside the mesh raises ``TimeOutOfHorizon``.
    """

    s_min: float
    h: float
    phi_plus: np.ndarray
    phi_minus: np.ndarray
    dphi_plus: np.ndarray
    dphi_minus: np.ndarray
    static_hi: bool = False
    static_lo: bool = False
    free: bool = False

    def __post_init__(self):
        n = self.phi_plus.shape[0]
        for a in (self.phi_minus, self.dphi_plus, self.dphi_minus):
            if a.shape != (n,):
                raise ValueError("characteristic arrays must share one length")
        for name in ("phi_plus", "phi_minus", "dphi_plus", "dphi_minus"):
            a = np.array(getattr(self, name), dtype=np.float64)
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    @property
    def s(self) -> np.ndarray:
        return self.s_min + self.h * np.arange(self.phi_plus.shape[0])

    @property
    def s_max(self) -> float:
        return self.s_min + self.h * (self.phi_plus.shape[0] - 1)

    @property
    def horizon(self) -> float:
        """Largest |t| for which an exterior evaluation at r = 1 stays on the mesh."""
        return 1.0 - self.s_min if not self.free else math.inf


@dataclass(frozen=True, eq=False)
class RadiationField:
    """Asymptotic profile ``G`` sampled on ``s_j = s_min + j*h``."""

    s_min: float
    h: float
    G: np.ndarray

    @property
    def s(self) -> np.ndarray:
        return self.s_min + self.h * np.arange(self.G.shape[0])


def _quiet(edge_vals, scale) -> bool:
    return all(abs(v) <= QUIET_RTOL * max(scale, 1.0) for v in edge_vals)


def neumann_char_pair(data: RadialState, t_max: float | None = None) -> CharPair:
    """Characteristic profiles of the linear Neumann evolution of ``data``.

    ``t_max`` is the time horizon (default: the largest the grid supports,
    ``r_max - 1``); it is rounded up to a multiple of h.
    """
    g = data.grid
    if not g.exterior:
        raise WrongDomain("neumann_char_pair needs an exterior (r_min = 1) state")
    h = g.h
    if t_max is None:
        m = g.n_points - 1
    else:
        m = int(math.ceil(abs(t_max) / h - 1e-9))
        if m > g.n_points - 1:
            raise HorizonExceedsGrid(
                f"horizon {t_max} needs data up to r = {1 + m * h} > r_max = {g.r_max}"
            )
    r = g.r
    z0 = r * data.u
    z1 = r * data.ut
    dz0 = d_dr(z0, h)
    I1 = cumulative_trapezoid(z1, dx=h, initial=0.0)

    # s >= 1: plain d'Alembert split
    pp_hi = 0.5 * z0 - 0.5 * I1
    pm_hi = 0.5 * z0 + 0.5 * I1
    dpp_hi = 0.5 * dz0 - 0.5 * z1
    dpm_hi = 0.5 * dz0 + 0.5 * z1

    # s = 1 - k h <= 1, reflected argument 2 - s = r_k
    sl = slice(0, m + 1)
    Kp = kernels.exp_recurrence(np.ascontiguousarray(dz0[sl] + z1[sl]), h)
    Km = kernels.exp_recurrence(np.ascontiguousarray(dz0[sl] - z1[sl]), h)
    decay = np.exp(-h * np.arange(m + 1)) * z0[0]
    pp_lo = Kp - 0.5 * z0[sl] - 0.5 * I1[sl] + decay
    pm_lo = Km - 0.5 * z0[sl] + 0.5 * I1[sl] + decay
    # boundary identity d_r zeta = zeta at r = 1, transported along characteristics
    dpp_lo = pp_lo + pm_hi[sl] - dpm_hi[sl]
    dpm_lo = pm_lo + pp_hi[sl] - dpp_hi[sl]

    def join(lo, hi):
        return np.concatenate([lo[:0:-1], hi])

    scale = float(np.max(np.abs(z0))) if z0.size else 0.0
    quiet = _quiet((dz0[-1], z1[-1]), scale)
    return CharPair(
        s_min=1.0 - m * h,
        h=h,
        phi_plus=join(pp_lo, pp_hi),
        phi_minus=join(pm_lo, pm_hi),
        dphi_plus=join(dpp_lo, dpp_hi),
        dphi_minus=join(dpm_lo, dpm_hi),
        static_hi=quiet,
    )


def free_char_pair(data: RadialState) -> CharPair:
    """Characteristic profiles of the free radial evolution (odd extension through 0)."""
    g = data.grid
    if g.exterior:
        raise WrongDomain("free_char_pair needs a whole-space (r_min = 0) state")
    h = g.h
    r = g.r
    z0 = r * data.u
    z1 = r * data.ut
    # odd extensions on [-r_max, r_max]
    z0e = np.concatenate([-z0[:0:-1], z0])
    z1e = np.concatenate([-z1[:0:-1], z1])
    dz0e = d_dr(z0e, h)
    n = g.n_points
    I = cumulative_trapezoid(z1e, dx=h, initial=0.0)
    I = I - I[n - 1]
    scale = float(np.max(np.abs(z0))) if z0.size else 0.0
    quiet = _quiet((dz0e[-1], z1e[-1]), scale)
    return CharPair(
        s_min=-g.r_max,
        h=h,
        phi_plus=0.5 * z0e - 0.5 * I,
        phi_minus=0.5 * z0e + 0.5 * I,
        dphi_plus=0.5 * dz0e - 0.5 * z1e,
        dphi_minus=0.5 * dz0e + 0.5 * z1e,
        static_hi=quiet,
        static_lo=quiet,
        free=True,
    )


def _sample(pair: CharPair, arr: np.ndarray, s: np.ndarray) -> np.ndarray:
    tol = 1e-9 * max(1.0, abs(pair.s_max), abs(pair.s_min))
    if not pair.static_lo and np.any(s < pair.s_min - tol):
        raise TimeOutOfHorizon(f"characteristic argument {s.min():.6g} below s_min = {pair.s_min:.6g}")
    if not pair.static_hi and np.any(s > pair.s_max + tol):
        raise TimeOutOfHorizon(f"characteristic argument {s.max():.6g} above s_max = {pair.s_max:.6g}")
    return np.interp(s, pair.s, arr)


def _sample_deriv(pair: CharPair, arr: np.ndarray, s: np.ndarray) -> np.ndarray:
    out = _sample(pair, arr, s)
    # constant continuation has zero slope
    out[(s > pair.s_max) | (s < pair.s_min)] = 0.0
    return out


def char_fields(pair: CharPair, t: float, r: np.ndarray):
    """``(zeta, d_t zeta, d_r zeta)`` of the represented solution at time t, radii r."""
    r = np.asarray(r, dtype=np.float64)
    a = r - t
    b = r + t
    fp = _sample(pair, pair.phi_plus, a)
    fm = _sample(pair, pair.phi_minus, b)
    dfp = _sample_deriv(pair, pair.dphi_plus, a)
    dfm = _sample_deriv(pair, pair.dphi_minus, b)
    return fp + fm, dfm - dfp, dfp + dfm


def char_eval(pair: CharPair, t: float, grid: RadialGrid) -> RadialState:
    """Linear solution represented by ``pair`` at time ``t`` sampled on ``grid``.

    Negative times are allowed; they are covered by the same profiles.
    """
    if pair.free != (not grid.exterior):
        raise WrongDomain("grid type does not match the characteristic pair")
    r = grid.r
    zeta, zt, zr = char_fields(pair, t, r)
    u = np.empty_like(r)
    ut = np.empty_like(r)
    pos = r > 0
    u[pos] = zeta[pos] / r[pos]
    ut[pos] = zt[pos] / r[pos]
    if not np.all(pos):
        # zeta is odd in r, so u(0) = d_r zeta(0); the velocity is extrapolated evenly
        u[0] = zr[0]
        ut[0] = (4.0 * ut[1] - ut[2]) / 3.0
    return RadialState(grid, u, ut)


def neumann_linear_evolve(data: RadialState, t: float) -> RadialState:
    """Linear Neumann evolution of ``data`` to time ``t`` on the data grid."""
    return char_eval(neumann_char_pair(data, abs(t)), t, data.grid)


def free_linear_evolve(data: RadialState, t: float) -> RadialState:
    """Free radial evolution of ``data`` to time ``t`` (any sign) on the data grid."""
    return char_eval(free_char_pair(data), t, data.grid)


def duhamel_neumann(forcing: Callable[[float, np.ndarray], np.ndarray], t: float, grid: RadialGrid) -> RadialState:
    """``int_0^t S_N(t - tau)(0, f(tau)) dtau`` with zero data.

    ``forcing(tau, r)`` returns f sampled at radii r. Time quadrature is the
    trapezoid rule on ``tau_k = k*h``; ``t`` is rounded to that mesh.
    """
    if t < 0:
        raise NegativeTime("duhamel_neumann needs t >= 0; reflect time for the past")
    if not grid.exterior:
        raise WrongDomain("duhamel_neumann works on exterior grids")
    h = grid.h
    n = int(round(t / h))
    nr = grid.n_points
    if n == 0:
        return RadialState(grid, np.zeros(nr), np.zeros(nr))
    sig = 1.0 + h * np.arange(nr + n)
    idx = np.arange(nr)
    zeta = np.zeros(nr)
    vel = np.zeros(nr)
    for k in range(n + 1):
        tau = k * h
        m = n - k
        g = sig * np.asarray(forcing(tau, sig), dtype=np.float64)
        I = cumulative_trapezoid(g, dx=h, initial=0.0)
        w = 0.5 if k in (0, n) else 1.0
        far = idx >= m
        near = ~far
        hi = idx + m
        zk = np.empty(nr)
        vk = np.empty(nr)
        a = idx[far] - m
        zk[far] = 0.5 * (I[hi[far]] - I[a])
        vk[far] = 0.5 * (g[a] + g[hi[far]])
        if np.any(near):
            j = m - idx[near]
            K = kernels.exp_recurrence(np.ascontiguousarray(g[: m + 1]), h)
            zk[near] = K[j] + 0.5 * (I[hi[near]] - I[j])
            vk[near] = -K[j] + 0.5 * g[j] + 0.5 * g[hi[near]]
        zeta += w * zk
        vel += w * vk
    zeta *= h
    vel *= h
    return RadialState(grid, zeta / grid.r, vel / grid.r)


def radiation_extract(pair: CharPair) -> RadiationField:
    """Outgoing radiation profile ``G = -phi_plus'``.

    Along the outgoing rays ``r*d_t u -> G(r - t)`` and ``r*d_r u -> -G(r - t)``.
    """
    return RadiationField(pair.s_min, pair.h, -np.array(pair.dphi_plus))


def free_data_from_radiation(field: RadiationField, edge_tol: float = 1e-6) -> RadialState:
    """Whole-space data whose free evolution radiates along ``field``.

    With ``phi(s) = -int_{-inf}^s G`` the data are ``v0 = (phi(r) - phi(-r))/r``
    and ``v1 = (G(r) - G(-r))/r``; G is taken as zero off its mesh.
    """
    G = np.asarray(field.G, dtype=np.float64)
    if not np.all(np.isfinite(G)):
        raise NonIntegrableField("radiation field has non-finite samples")
    peak = float(np.max(np.abs(G))) if G.size else 0.0
    if peak > 0 and max(abs(G[0]), abs(G[-1])) > edge_tol * peak:
        raise NonIntegrableField("radiation field does not decay at the ends of its mesh")
    h = field.h
    s = field.s
    phi = -cumulative_trapezoid(G, dx=h, initial=0.0)
    R = max(abs(s[0]), abs(s[-1]))
    n = int(math.ceil(R / h - 1e-9))
    grid = RadialGrid(0.0, h, max(n + 1, 3))
    r = grid.r

    def Gat(x):
        return np.interp(x, s, G, left=0.0, right=0.0)

    def phat(x):
        return np.interp(x, s, phi, left=0.0, right=phi[-1])

    v0 = np.empty_like(r)
    v1 = np.empty_like(r)
    v0[1:] = (phat(r[1:]) - phat(-r[1:])) / r[1:]
    v1[1:] = (Gat(r[1:]) - Gat(-r[1:])) / r[1:]
    v0[0] = -2.0 * Gat(0.0)
    v1[0] = (4.0 * v1[1] - v1[2]) / 3.0
    return RadialState(grid, v0, v1)


def free_radiation(data: RadialState) -> RadiationField:
    """Radiation profile of the free evolution of whole-space data."""
    return radiation_extract(free_char_pair(data))
