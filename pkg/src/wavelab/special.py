"""Stationary solutions: the ground state W, its rescalings W_ell, and the
singular exterior solution Z of ``Laplace Z = Z^5``.

Z is obtained by shooting inward from large r, where ``g = r*Z`` solves
``g'' = g^5 / r^4`` and has the expansion
``g = ell + c2/r^2 + c4/r^4 + c6/r^6 + O(r^-8)``. The inward integration stops
once |Z| passes a large threshold; the singular radius sits just inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import NoBlowUpFound, ROutOfRange, TooCloseToSingularity, ZeroEll

SQRT3 = math.sqrt(3.0)
# int_{R^3} |grad W|^2 = int_{R^3} W^6
W_GRAD_SQ = 0.75 * SQRT3 * math.pi**2
# E(W, 0) for the focusing equation
W_ENERGY = W_GRAD_SQ / 3.0


def ground_state(r, ell: float = SQRT3):
    """``W_ell(r) = (sqrt(3)/ell) (1 + 3 r^2/ell^4)^(-1/2)``; ``ell = sqrt(3)`` gives W."""
    if ell == 0:
        raise ZeroEll("ell must be non-zero")
    r = np.asarray(r, dtype=np.float64)
    if np.any(r < 0):
        raise ROutOfRange("radius must be non-negative")
    return SQRT3 / ell / np.sqrt(1.0 + 3.0 * r**2 / ell**4)


def ground_state_dr(r, ell: float = SQRT3):
    """Radial derivative of ``W_ell``."""
    if ell == 0:
        raise ZeroEll("ell must be non-zero")
    r = np.asarray(r, dtype=np.float64)
    return -3.0 * SQRT3 * r / ell**5 * (1.0 + 3.0 * r**2 / ell**4) ** -1.5


@dataclass(frozen=True, eq=False)
class StationaryProfile:
    """Samples ``f(r_i)`` of a stationary solution on a uniform mesh.

    ``inner_limit_radius`` is 0 for W and the innermost trusted radius for Z;
    ``bracket`` encloses the singular radius of Z. ``dense`` evaluates the
    profile between mesh points when available.
    """

    kind: str
    ell: float
    r: np.ndarray
    f: np.ndarray
    inner_limit_radius: float = 0.0
    bracket: tuple | None = None
    z_estimate: float | None = None
    dense: Callable | None = None

    @property
    def h(self) -> float:
        return float(self.r[1] - self.r[0])

    def __call__(self, r):
        if self.dense is None:
            return np.interp(r, self.r, self.f)
        return self.dense(r)


def w_profile(r_max: float, h: float, ell: float = SQRT3) -> StationaryProfile:
    """W_ell sampled on ``[0, r_max]``."""
    n = int(round(r_max / h)) + 1
    r = h * np.arange(n)
    kind = "W" if ell == SQRT3 else "W_ell"
    return StationaryProfile(kind, ell, r, ground_state(r, ell), 0.0, dense=lambda x: ground_state(x, ell))


def _z_asymptote(ell: float, r: float):
    c2 = ell**5 / 6.0
    c4 = ell**9 / 24.0
    c6 = (5.0 * ell**4 * c4 + 10.0 * ell**3 * c2**2) / 42.0
    g = ell + c2 / r**2 + c4 / r**4 + c6 / r**6
    dg = -2.0 * c2 / r**3 - 4.0 * c4 / r**5 - 6.0 * c6 / r**7
    return g, dg


def z_shoot(ell: float = 1.0, r_start: float = 50.0, h: float = 1e-3, cap: float = 1e6) -> StationaryProfile:
    """Shoot ``Laplace Z = Z^5`` inward from ``r_start`` with ``r Z -> ell`` at infinity.

    The integration uses an adaptive eighth-order Runge-Kutta method with
    dense output; samples are returned on the uniform mesh of spacing ``h``
    between the stopping radius and ``r_start``.
    """
    if ell == 0:
        raise ZeroEll("ell must be non-zero")
    if r_start < 20.0 * ell**2:
        raise ROutOfRange(f"r_start = {r_start} is not in the asymptotic regime (need >= {20 * ell**2})")
    g0, dg0 = _z_asymptote(ell, r_start)

    def rhs(r, y):
        return [y[1], y[0] ** 5 / r**4]

    def hit_cap(r, y):
        return abs(y[0]) - cap * r

    hit_cap.terminal = True
    r_stop = 1e-8 * r_start
    sol = solve_ivp(
        rhs, (r_start, r_stop), [g0, dg0], method="DOP853", rtol=1e-12, atol=1e-14,
        events=hit_cap, dense_output=True,
    )
    if sol.status != 1 or not len(sol.t_events[0]):
        raise NoBlowUpFound(f"integration reached r = {sol.t[-1]:.3g} with Z bounded")
    r_hit = float(sol.t_events[0][0])
    g_hit = float(sol.y_events[0][0][0])
    # near the singular radius g ~ A (r - z)^(-1/2) with A^2 = (sqrt(3)/2) z^2
    z_est = r_hit - 0.5 * SQRT3 * r_hit**2 / g_hit**2

    n = int(math.floor((r_start - r_hit) / h))
    r = r_start - h * np.arange(n + 1)[::-1]
    g = sol.sol(r)[0]
    dense_sol = sol.sol

    def dense(x):
        x = np.asarray(x, dtype=np.float64)
        return dense_sol(x)[0] / x

    return StationaryProfile(
        kind="Z",
        ell=ell,
        r=r,
        f=g / r,
        inner_limit_radius=r_hit,
        bracket=(r_hit - h, r_hit),
        z_estimate=z_est,
        dense=dense,
    )


def laplacian(r: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Radial Laplacian ``(r f)''/r`` by centered differences at interior nodes.

    Entry i of the result belongs to node i+1.
    """
    h = r[1] - r[0]
    z = r * f
    out = (z[2:] - 2.0 * z[1:-1] + z[:-2]) / (h * h * r[1:-1])
    return out


def elliptic_residual(profile: StationaryProfile, sign: int, r_lo: float | None = None, r_hi: float | None = None) -> float:
    """Relative residual ``max|Laplace f - sign f^5| / max|f^5|`` on interior nodes.

    ``sign = +1`` tests ``Laplace Z = Z^5``, ``sign = -1`` tests ``-Laplace W = W^5``.
    The default window for Z starts at twice the stopping radius.
    """
    r, f = profile.r, profile.f
    if r_lo is None:
        r_lo = 2.0 * profile.inner_limit_radius if profile.inner_limit_radius > 0 else r[0]
    if r_hi is None:
        r_hi = r[-1]
    if profile.inner_limit_radius > 0 and r_lo <= 1.05 * profile.inner_limit_radius:
        raise TooCloseToSingularity(
            f"window starts at {r_lo:.6g}, too close to the singular radius {profile.inner_limit_radius:.6g}"
        )
    lap = laplacian(r, f)
    ri = r[1:-1]
    fi = f[1:-1]
    mask = (ri >= r_lo) & (ri <= r_hi) & (ri > 0)
    if not np.any(mask):
        raise ROutOfRange("residual window contains no interior node")
    res = np.abs(lap[mask] - sign * fi[mask] ** 5)
    scale = np.max(np.abs(fi[mask] ** 5))
    if scale == 0:
        return math.inf if np.any(res > 0) else 0.0
    return float(np.max(res) / scale)


def tail_constant(profile: StationaryProfile, r_lo: float, r_hi: float) -> float:
    """Smallest C with ``|f(r) - ell/r| <= C/r^3`` on the mesh nodes of ``[r_lo, r_hi]``."""
    m = (profile.r >= r_lo) & (profile.r <= r_hi)
    if not np.any(m):
        raise ROutOfRange("tail window contains no node")
    r = profile.r[m]
    return float(np.max(np.abs(profile.f[m] - profile.ell / r) * r**3))
