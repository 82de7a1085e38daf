"""Radial grids, states, norms and the elementary integral identities.

All three-dimensional integrals carry the solid-angle factor 4*pi, so a radial
integral ``4*pi * int f(r) r^2 dr`` is reported as the integral of ``f`` over
the exterior domain {|x| >= 1} or over R^3. Quadrature is the composite
trapezoid rule on the uniform mesh and radial derivatives are centered
differences with second-order one-sided stencils at the two ends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    DomainTooSmall,
    InvalidState,
    NonIntegralSpan,
    NonPositiveLambda,
    NonPositiveSpacing,
    ROutOfRange,
    WrongDomain,
)

FOUR_PI = 4.0 * math.pi

# Relative slack when deciding that (r_max - r_min)/h is an integer.
_SPAN_RTOL = 1e-9


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial mesh ``r_i = r_min + i*h``, ``i = 0 .. n_points-1``.

    ``r_min`` is 1 for the exterior of the unit ball and 0 for R^3.
    """

    r_min: float
    h: float
    n_points: int

    def __post_init__(self):
        if self.r_min not in (0.0, 1.0):
            raise WrongDomain(f"r_min must be 0 or 1, got {self.r_min}")
        if not self.h > 0:
            raise NonPositiveSpacing(f"spacing must be positive, got {self.h}")
        if self.n_points < 3:
            raise DomainTooSmall("a grid needs at least three points")

    @cached_property
    def r(self) -> np.ndarray:
        r = self.r_min + self.h * np.arange(self.n_points, dtype=np.float64)
        r.flags.writeable = False
        return r

    @property
    def r_max(self) -> float:
        return self.r_min + self.h * (self.n_points - 1)

    @property
    def exterior(self) -> bool:
        return self.r_min == 1.0

    def index_of(self, radius: float, *, tol: float = 1e-9) -> int:
        """Index of the node at ``radius``; raises if ``radius`` is not a node."""
        q = (radius - self.r_min) / self.h
        k = int(round(q))
        if abs(q - k) > tol * max(1.0, abs(q)) or not 0 <= k < self.n_points:
            raise ROutOfRange(f"radius {radius} is not a node of this grid")
        return k

    def truncated(self, r_max: float) -> "RadialGrid":
        """Sub-grid of the nodes with ``r <= r_max`` (same origin and spacing)."""
        n = int(math.floor((r_max - self.r_min) / self.h + 1e-9)) + 1
        return RadialGrid(self.r_min, self.h, min(n, self.n_points))

    def with_r_max(self, r_max: float) -> "RadialGrid":
        n = int(math.floor((r_max - self.r_min) / self.h + 1e-9)) + 1
        return RadialGrid(self.r_min, self.h, n)


def make_grid(r_min: float, r_max: float, h: float) -> RadialGrid:
    """Build a uniform radial grid on ``[r_min, r_max]`` with spacing ``h``."""
    if not h > 0:
        raise NonPositiveSpacing(f"spacing must be positive, got {h}")
    if r_min not in (0, 1):
        raise WrongDomain(f"r_min must be 0 or 1, got {r_min}")
    if not r_max > r_min + 2 * h:
        raise DomainTooSmall(f"r_max={r_max} must exceed r_min + 2h = {r_min + 2 * h}")
    q = (r_max - r_min) / h
    n = round(q)
    if abs(q - n) > _SPAN_RTOL * q:
        raise NonIntegralSpan(f"(r_max - r_min)/h = {q} is not an integer")
    return RadialGrid(float(r_min), float(h), int(n) + 1)


def _frozen(a) -> np.ndarray:
    out = np.array(a, dtype=np.float64)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class RadialState:
    """Sampled pair ``(u, du/dt)`` on a radial grid."""

    grid: RadialGrid
    u: np.ndarray
    ut: np.ndarray = field(default=None)

    def __post_init__(self):
        u = _frozen(self.u)
        ut = _frozen(np.zeros_like(u) if self.ut is None else self.ut)
        n = self.grid.n_points
        if u.shape != (n,) or ut.shape != (n,):
            raise InvalidState(f"arrays must have shape ({n},), got {u.shape} and {ut.shape}")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(ut))):
            raise InvalidState("state contains non-finite values")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "ut", ut)

    @classmethod
    def from_functions(cls, grid: RadialGrid, f: Callable, g: Callable | None = None) -> "RadialState":
        r = grid.r
        u = f(r)
        ut = np.zeros_like(r) if g is None else g(r)
        return cls(grid, np.broadcast_to(u, r.shape), np.broadcast_to(ut, r.shape))

    @property
    def r(self) -> np.ndarray:
        return self.grid.r

    @property
    def zeta(self) -> np.ndarray:
        return self.grid.r * self.u

    def __add__(self, other: "RadialState") -> "RadialState":
        if other.grid != self.grid:
            raise InvalidState("cannot add states on different grids")
        return RadialState(self.grid, self.u + other.u, self.ut + other.ut)

    def __sub__(self, other: "RadialState") -> "RadialState":
        if other.grid != self.grid:
            raise InvalidState("cannot subtract states on different grids")
        return RadialState(self.grid, self.u - other.u, self.ut - other.ut)

    def __mul__(self, c: float) -> "RadialState":
        return RadialState(self.grid, c * self.u, c * self.ut)

    __rmul__ = __mul__


def d_dr(f: np.ndarray, h: float) -> np.ndarray:
    return np.gradient(f, h, edge_order=2)


def trapz(y: np.ndarray, h: float) -> float:
    y = np.asarray(y)
    if y.size < 2:
        return 0.0
    return float(h * (y.sum() - 0.5 * (y[0] + y[-1])))


def tail_integral(grid: RadialGrid, y: np.ndarray, R: float) -> float:
    """Trapezoid integral of samples ``y`` over ``[R, r_max]``.

    ``R`` need not be a node; the partial first cell uses linear interpolation.
    """
    if R < grid.r_min - 1e-12 or R > grid.r_max + 1e-12:
        raise ROutOfRange(f"R={R} outside [{grid.r_min}, {grid.r_max}]")
    q = (R - grid.r_min) / grid.h
    k = int(math.ceil(q - 1e-9))
    total = trapz(y[k:], grid.h)
    frac = k - q
    if frac > 1e-9 and k >= 1:
        yR = y[k] - frac * (y[k] - y[k - 1])
        total += 0.5 * frac * grid.h * (yR + y[k])
    return total


class Norms(NamedTuple):
    h_sq: float
    l6_pow6: float
    weighted_l2_sq: float
    gradient_sq: float
    kinetic_sq: float


def norms(state: RadialState) -> Norms:
    """Energy-space norm squared, L^6 norm to the sixth, and ``||u/r||^2_{L^2}``."""
    g = state.grid
    r2 = g.r**2
    du = d_dr(state.u, g.h)
    grad = FOUR_PI * trapz(du**2 * r2, g.h)
    kin = FOUR_PI * trapz(state.ut**2 * r2, g.h)
    l6 = FOUR_PI * trapz(state.u**6 * r2, g.h)
    wl2 = FOUR_PI * trapz(state.u**2, g.h)
    return Norms(grad + kin, l6, wl2, grad, kin)


def h_norm(state: RadialState) -> float:
    return math.sqrt(norms(state).h_sq)


class HardyCheck(NamedTuple):
    lhs: float
    rhs: float
    boundary_sq: float


def hardy_check(state: RadialState) -> HardyCheck:
    """Both sides of ``int u^2 dr <= 4 int (u')^2 r^2 dr`` and ``u(1)^2``.

    Integration by parts plus Cauchy-Schwarz also gives ``u(1)^2 <= rhs``.
    """
    g = state.grid
    if not g.exterior:
        raise WrongDomain("hardy_check needs an exterior (r_min = 1) state")
    du = d_dr(state.u, g.h)
    lhs = trapz(state.u**2, g.h)
    rhs = 4.0 * trapz(du**2 * g.r**2, g.h)
    return HardyCheck(lhs, rhs, float(state.u[0] ** 2))


@dataclass(frozen=True)
class EnergyRecord:
    kinetic: float
    gradient: float
    potential: float
    total: float
    time: float = 0.0


def energy(state: RadialState, iota: int, time: float = 0.0) -> EnergyRecord:
    """Conserved energy ``1/2 ||grad u||^2 + 1/2 ||u_t||^2 + iota/6 ||u||_6^6``."""
    n = norms(state)
    kin = 0.5 * n.kinetic_sq
    grad = 0.5 * n.gradient_sq
    pot = iota * n.l6_pow6 / 6.0
    return EnergyRecord(kin, grad, pot, kin + grad + pot, time)


def _inner_count(h: float) -> int:
    q = 1.0 / h
    k = round(q)
    if abs(q - k) > 1e-9 * q:
        raise NonIntegralSpan(f"1/h = {q} must be an integer to move between r>=1 and r>=0 grids")
    return int(k)


def extend_P(state: RadialState) -> RadialState:
    """Extend an exterior state to R^3 by ``(u(1), 0)`` inside the unit ball."""
    g = state.grid
    if not g.exterior:
        raise WrongDomain("extend_P needs an exterior (r_min = 1) state")
    m = _inner_count(g.h)
    out = RadialGrid(0.0, g.h, g.n_points + m)
    u = np.concatenate([np.full(m, state.u[0]), state.u])
    ut = np.concatenate([np.zeros(m), state.ut])
    return RadialState(out, u, ut)


def restrict(state: RadialState) -> RadialState:
    """Restriction of an R^3 state to the exterior grid ``r >= 1``."""
    g = state.grid
    if g.exterior:
        return state
    m = _inner_count(g.h)
    out = RadialGrid(1.0, g.h, g.n_points - m)
    return RadialState(out, state.u[m:], state.ut[m:])


def scale_sigma(state: RadialState, lam: float) -> RadialState:
    """Energy-critical rescaling ``(f, g) -> (lam^-1/2 f(r/lam), lam^-3/2 g(r/lam))``.

    The result is resampled on the same grid by linear interpolation; beyond
    the input grid the data are continued by their last sample.
    """
    g = state.grid
    if g.exterior:
        raise WrongDomain("scale_sigma acts on R^3 states (r_min = 0)")
    if not lam > 0:
        raise NonPositiveLambda(f"lambda must be positive, got {lam}")
    if lam == 1.0:
        return state
    x = g.r / lam
    u = np.interp(x, g.r, state.u) / math.sqrt(lam)
    ut = np.interp(x, g.r, state.ut) / lam**1.5
    return RadialState(g, u, ut)


class IppIdentity(NamedTuple):
    lhs: float
    rhs: float


def ipp_identity(state: RadialState, R: float) -> IppIdentity:
    """``int_R (d_r(r u))^2 dr + R u(R)^2`` against ``int_R (d_r u)^2 r^2 dr``."""
    g = state.grid
    if R < g.r_min or R >= g.r_max:
        raise ROutOfRange(f"R={R} outside [{g.r_min}, {g.r_max})")
    dzeta = d_dr(state.zeta, g.h)
    du = d_dr(state.u, g.h)
    uR = float(np.interp(R, g.r, state.u))
    lhs = tail_integral(g, dzeta**2, R) + R * uR**2
    rhs = tail_integral(g, du**2 * g.r**2, R)
    return IppIdentity(lhs, rhs)


def bump(r: np.ndarray, center: float, width: float) -> np.ndarray:
    """C-infinity bump ``exp(1 - 1/(1 - x^2))``, ``x = (r - center)/width``; peak value 1."""
    x = (np.asarray(r, dtype=np.float64) - center) / width
    out = np.zeros_like(x)
    inside = np.abs(x) < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - x[inside] ** 2))
    return out


def smooth_step(r: np.ndarray, r0: float, r1: float) -> np.ndarray:
    """C-infinity transition equal to 1 for ``r <= r0`` and 0 for ``r >= r1``."""
    x = np.clip((np.asarray(r, dtype=np.float64) - r0) / (r1 - r0), 0.0, 1.0)

    def psi(y):
        out = np.zeros_like(y)
        m = y > 0
        out[m] = np.exp(-1.0 / y[m])
        return out

    a = psi(1.0 - x)
    b = psi(x)
    return a / (a + b)
