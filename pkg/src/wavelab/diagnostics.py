"""Measurements on trajectories and data: local energy, Strichartz norms,
radiation fits, exterior energy channels, trapping, virial convexity, profile
superpositions and the comparison of exterior and whole-space evolutions of
dilating data.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    FOUR_PI,
    RadialGrid,
    RadialState,
    d_dr,
    norms,
    restrict,
    scale_sigma,
    tail_integral,
    trapz,
)
from .errors import (
    BlowUpRun,
    HorizonTooShort,
    IndexOutOfRange,
    NonSquareIntegrable,
    ROutOfRange,
    WrongDomain,
)
from .lingroup import (
    RadiationField,
    char_fields,
    free_char_pair,
    free_linear_evolve,
    neumann_char_pair,
    neumann_linear_evolve,
    char_eval,
)
from .solver import SolverConfig, Trajectory, evolve_free, evolve_neumann, l5l10
from .special import W_ENERGY, W_GRAD_SQ


def _window_integral(grid: RadialGrid, y: np.ndarray, a: float, b: float) -> float:
    return tail_integral(grid, y, a) - tail_integral(grid, y, b)


# ---------------------------------------------------------------- local energy


def local_energy(traj: Trajectory, R: float) -> dict:
    """Quadratic energy on ``r_min <= r <= R`` per snapshot and its time integral."""
    g = traj.grid
    if not (R > 1.0 and R <= g.r_max):
        raise ROutOfRange(f"R = {R} must lie in (1, {g.r_max}]")
    series = []
    for t, st in traj.snapshots:
        du = d_dr(st.u, g.h)
        dens = (du**2 + st.ut**2) * g.r**2
        series.append((t, 0.5 * FOUR_PI * _window_integral(g, dens, g.r_min, R)))
    ts = np.array([s[0] for s in series])
    es = np.array([s[1] for s in series])
    total = float(np.trapezoid(es, ts)) if len(ts) > 1 else 0.0
    return {"series": series, "time_integral": total}


def strichartz_accumulate(traj: Trajectory) -> float:
    """Discrete ``||u||_{L^5 L^10}`` over the snapshots of the run."""
    return l5l10(traj.times, traj.states)


def strichartz_running(traj: Trajectory) -> np.ndarray:
    """Running value of the L^5 L^10 norm up to each snapshot."""
    out = np.zeros(len(traj))
    for k in range(1, len(traj)):
        out[k] = l5l10(traj.times[: k + 1], traj.states[: k + 1])
    return out


# ---------------------------------------------------------------- scattering


@dataclass
class ScatteringFit:
    G: RadiationField
    residual: float
    relative_residual: float
    series: list = field(default_factory=list)


def _radiation_residual(state: RadialState, t: float):
    g = state.grid
    zt = g.r * state.ut
    zr = d_dr(g.r * state.u, g.h)
    G = 0.5 * (zt - zr)
    res = math.sqrt(FOUR_PI * trapz((zt - G) ** 2, g.h)) + math.sqrt(FOUR_PI * trapz((zr + G) ** 2, g.h))
    return G, res


def scattering_fit(traj: Trajectory, window: tuple[float, float]) -> ScatteringFit:
    """Fit the outgoing profile ``G(r - t)`` on the snapshots inside ``window``.

    ``G = (d_t(r u) - d_r(r u))/2``; the residual is the energy-level size of
    what is not carried by that outgoing wave, reported at the last snapshot of
    the window (and as a series across it).
    """
    if traj.blew_up:
        raise BlowUpRun("cannot fit radiation to a run that blew up")
    t0, t1 = window
    ts = np.asarray(traj.times)
    if t0 > t1 or t0 < ts[0] - 1e-12 or t1 > ts[-1] + 1e-9:
        raise ROutOfRange(f"window {window} outside the run [{ts[0]}, {ts[-1]}]")
    idx = np.nonzero((ts >= t0 - 1e-9) & (ts <= t1 + 1e-9))[0]
    if idx.size == 0:
        raise ROutOfRange("no snapshot inside the window")
    data_norm = math.sqrt(norms(traj.states[0]).h_sq)
    series = []
    G = None
    res = 0.0
    for k in idx:
        G, res = _radiation_residual(traj.states[k], ts[k])
        series.append((float(ts[k]), res))
    t_last = float(ts[idx[-1]])
    grid = traj.grid
    field_ = RadiationField(grid.r_min - t_last, grid.h, G)
    rel = res / data_norm if data_norm > 0 else 0.0
    return ScatteringFit(field_, res, rel, series)


# ---------------------------------------------------------------- channels


@dataclass(frozen=True)
class ChannelReport:
    left_limit: float
    right_limit: float
    rhs: float
    defect: float

    @property
    def relative_defect(self) -> float:
        return self.defect / self.rhs if self.rhs > 0 else self.defect


def _exterior_energy(pair, R: float, t: float, r_far: float, h: float) -> float:
    a = R + abs(t)
    n = int(round((r_far + abs(t) - a) / h)) + 1
    r = a + h * np.arange(max(n, 2))
    _, zt, zr = char_fields(pair, t, r)
    return trapz(zt**2 + zr**2, h)


def exterior_channel(
    data: RadialState, R: float, t_probe: float, delta: float | None = None, tol: float = 1e-8
) -> ChannelReport:
    """Outgoing energies outside ``r = R + |t|`` as ``t -> +-inf`` against the data side.

    The limits are read off at ``+-t_probe`` and checked against the probe
    ``t_probe - delta``; a change above ``tol`` (relative) raises
    ``HorizonTooShort``.
    """
    g = data.grid
    if g.exterior:
        raise WrongDomain("exterior_channel takes whole-space data")
    k = g.index_of(R)
    h = g.h
    pair = free_char_pair(data)
    tp = h * round(t_probe / h)
    if delta is None:
        delta = max(h, h * round(0.1 * tp / h))
    tq = tp - delta
    z0 = g.r * data.u
    z1 = g.r * data.ut
    rhs = trapz((d_dr(z0, h) ** 2 + z1**2)[k:], h)
    right = _exterior_energy(pair, R, tp, g.r_max, h)
    left = _exterior_energy(pair, R, -tp, g.r_max, h)
    right_q = _exterior_energy(pair, R, tq, g.r_max, h)
    left_q = _exterior_energy(pair, R, -tq, g.r_max, h)
    scale = max(rhs, 1e-300) if rhs > 0 else 1.0
    if abs(right - right_q) > tol * scale or abs(left - left_q) > tol * scale:
        raise HorizonTooShort(f"exterior energies still moving at t = {tp}; probe later")
    return ChannelReport(left, right, rhs, abs(left + right - rhs))


def rigidity_step1_gauge(data: RadialState, R: float) -> dict:
    """``int_R (d_r(r u0))^2 + r^2 u1^2 dr`` and ``R^5 u0(R)^10`` (unit constant)."""
    g = data.grid
    if R < g.r_min or R > g.r_max:
        raise ROutOfRange(f"R = {R} outside the grid")
    z0 = g.r * data.u
    dens = d_dr(z0, g.h) ** 2 + (g.r * data.ut) ** 2
    lhs = tail_integral(g, dens, R)
    uR = float(np.interp(R, g.r, data.u))
    return {"lhs": lhs, "rhs_bound": R**5 * uR**10}


# ---------------------------------------------------------------- focusing


def gradient_sq(state: RadialState) -> float:
    return norms(state).gradient_sq


def trapping_series(traj: Trajectory) -> dict:
    """Gap ``||grad u(t)||^2 - ||grad W||^2_{R^3}`` per snapshot and its sign pattern."""
    series = [(t, gradient_sq(st) - W_GRAD_SQ) for t, st in traj.snapshots]
    gaps = np.array([s[1] for s in series])
    signs = np.sign(gaps)
    constant = bool(np.all(signs == signs[0]) and signs[0] != 0)
    return {
        "series": series,
        "sign_constant": constant,
        "sign": int(signs[0]),
        "delta": float(np.min(np.abs(gaps))),
    }


@dataclass
class VirialSeries:
    t: np.ndarray
    y: np.ndarray
    dy: np.ndarray
    d2y_measured: np.ndarray
    d2y_identity: np.ndarray
    d2y_lower: np.ndarray
    delta0: float


def virial_series(traj: Trajectory, edge_rtol: float = 1e-8) -> VirialSeries:
    """``y = ||u||^2_{L^2}``, its derivatives, and the convexity lower bound.

    ``y''`` is measured by second differences of y across snapshots (which must
    be equally spaced) and compared with the identity
    ``y'' = 2||u_t||^2 - 2||grad u||^2 - 2 iota ||u||_6^6`` and with the bound
    ``8||u_t||^2 + delta0``, ``delta0 = 12 (E(W) - E(u))``.
    """
    g = traj.grid
    r2 = g.r**2
    t = np.asarray(traj.times)
    y = np.empty(len(t))
    dy = np.empty(len(t))
    ident = np.empty(len(t))
    lower = np.empty(len(t))
    e0 = None
    for k, st in enumerate(traj.states):
        peak = np.max(np.abs(st.u))
        if peak > 0 and abs(st.u[-1]) > edge_rtol * peak:
            raise NonSquareIntegrable("u does not vanish at the outer edge; y is not defined")
        n = norms(st)
        y[k] = FOUR_PI * trapz(st.u**2 * r2, g.h)
        dy[k] = 2.0 * FOUR_PI * trapz(st.u * st.ut * r2, g.h)
        ident[k] = 2.0 * n.kinetic_sq - 2.0 * n.gradient_sq - 2.0 * traj.iota * n.l6_pow6
        if e0 is None:
            e0 = 0.5 * n.h_sq + traj.iota * n.l6_pow6 / 6.0
        lower[k] = 8.0 * n.kinetic_sq
    delta0 = 12.0 * (W_ENERGY - e0)
    lower += delta0
    d2 = np.full(len(t), np.nan)
    if len(t) >= 3:
        dt = np.diff(t)
        if np.allclose(dt, dt[0], rtol=1e-9):
            d2[1:-1] = (y[2:] - 2.0 * y[1:-1] + y[:-2]) / dt[0] ** 2
    return VirialSeries(t, y, dy, d2, ident, lower, delta0)


# ---------------------------------------------------------------- profiles


@dataclass(frozen=True, eq=False)
class ProfileSpec:
    """Profile ``psi`` with scales and time shifts along a sequence.

    ``psi`` is whole-space data or a callable ``r -> u`` (or ``(u, u_t)``).
    """

    psi: object
    lambdas: tuple
    times: tuple
    klass: str = "compact"

    def __post_init__(self):
        if not callable(self.psi) and self.psi.grid.exterior:
            raise WrongDomain("profiles are whole-space states")
        if len(self.lambdas) != len(self.times):
            raise ValueError("lambdas and times must have equal length")
        lam = np.asarray(self.lambdas, dtype=float)
        if self.klass == "compact":
            if not np.allclose(lam, 1.0):
                raise ValueError("compact profiles have all scales equal to 1")
        elif self.klass == "dilating":
            if np.any(lam <= 0) or np.any(np.diff(lam) <= 0):
                raise ValueError("dilating profiles need strictly increasing positive scales")
        else:
            raise ValueError(f"unknown profile class {self.klass!r}")
        object.__setattr__(self, "lambdas", tuple(float(x) for x in self.lambdas))
        object.__setattr__(self, "times", tuple(float(x) for x in self.times))

    def __len__(self):
        return len(self.lambdas)


def orthogonality_gauge(j, k, n: int) -> float:
    """``|t_j - t_k|/lambda_j + |log(lambda_j/lambda_k)|`` at index n."""
    lj, tj = j
    lk, tk = k
    if not (0 <= n < len(lj) and n < len(tj) and n < len(lk) and n < len(tk)):
        raise IndexOutOfRange(f"index {n} outside the parameter sequences")
    return abs(tj[n] - tk[n]) / lj[n] + abs(math.log(lj[n] / lk[n]))


def _whole_grid(grid: RadialGrid) -> RadialGrid:
    """Whole-space grid with the spacing and outer radius of ``grid``."""
    if not grid.exterior:
        return grid
    return RadialGrid(0.0, grid.h, grid.n_points + int(round(1.0 / grid.h)))


def _on_whole_space(psi, gw: RadialGrid) -> RadialState:
    """Sample ``psi`` on the whole-space grid ``gw``.

    ``psi`` is a whole-space state (linearly interpolated, zero beyond its
    reach) or a callable returning ``u`` or ``(u, u_t)`` at given radii.
    """
    if callable(psi):
        out = psi(gw.r)
        u, ut = out if isinstance(out, tuple) else (out, np.zeros_like(gw.r))
        return RadialState(gw, u, ut)
    pg = psi.grid
    if pg == gw:
        return psi
    r = gw.r
    u = np.interp(r, pg.r, psi.u, right=0.0)
    ut = np.interp(r, pg.r, psi.ut, right=0.0)
    return RadialState(gw, u, ut)


def _scaled(psi, lam: float, gw: RadialGrid) -> RadialState:
    """``sigma_lam psi`` on ``gw``; callables are sampled exactly, states interpolated."""
    if not callable(psi):
        return scale_sigma(_on_whole_space(psi, gw), lam)

    def f(r):
        out = psi(r / lam)
        u, ut = out if isinstance(out, tuple) else (out, np.zeros_like(r))
        return u / math.sqrt(lam), ut / lam**1.5

    return _on_whole_space(f, gw)


@dataclass(frozen=True)
class _Term:
    exterior: RadialState
    reference_h_sq: float
    reference_l6: float


def _profile_term(p: ProfileSpec, n: int, grid: RadialGrid) -> _Term:
    if not 0 <= n < len(p):
        raise IndexOutOfRange(f"index {n} outside the profile sequence")
    lam, t = p.lambdas[n], p.times[n]
    whole = _scaled(p.psi, lam, _whole_grid(grid))
    ext = restrict(whole)
    if t != 0.0:
        ext = neumann_linear_evolve(ext, -t)
    if p.klass == "compact":
        ref = norms(ext)
        return _Term(ext, ref.h_sq, ref.l6_pow6)
    if t != 0.0:
        whole = free_linear_evolve(whole, -t)
    ref = norms(whole)
    return _Term(ext, ref.h_sq, ref.l6_pow6)


def profile_superpose(profiles: Sequence[ProfileSpec], n: int, grid: RadialGrid, floor: float = 1.0) -> RadialState:
    """``sum_j S_N(-t_j) sigma_{lambda_j} psi_j`` restricted to the exterior grid."""
    if not grid.exterior:
        raise WrongDomain("superpositions live on the exterior grid")
    for a in range(len(profiles)):
        for b in range(a + 1, len(profiles)):
            pa, pb = profiles[a], profiles[b]
            gauge = orthogonality_gauge((pa.lambdas, pa.times), (pb.lambdas, pb.times), n)
            if gauge < floor:
                warnings.warn(f"profiles {a} and {b} are not orthogonal at index {n} (gauge {gauge:.3g})", stacklevel=2)
    total = RadialState(grid, np.zeros(grid.n_points), np.zeros(grid.n_points))
    for p in profiles:
        total = total + _profile_term(p, n, grid).exterior
    return total


def pythagorean_defect(data: RadialState, profiles: Sequence[ProfileSpec], n: int) -> dict:
    """Energy-norm and L^6 defects of ``data`` against the sum over its profiles.

    Compact terms are measured on the exterior domain, dilating terms on R^3.
    """
    terms = [_profile_term(p, n, data.grid) for p in profiles]
    nd = norms(data)
    h_def = abs(nd.h_sq - sum(t.reference_h_sq for t in terms))
    l6_def = abs(nd.l6_pow6 - sum(t.reference_l6 for t in terms))
    return {"h_defect": h_def, "l6_defect": l6_def}


# ---------------------------------------------------------------- dilating data


def _trace(state: RadialState):
    """``(|d_t u(1)|, |d_r u(1)|)`` with a one-sided second-order stencil for d_r."""
    g = state.grid
    k = g.index_of(1.0)
    u = state.u
    du = (-3.0 * u[k] + 4.0 * u[k + 1] - u[k + 2]) / (2.0 * g.h)
    return abs(state.ut[k]), abs(du)


def _support_radius(psi, probe: float = 64.0) -> float:
    """Largest radius where ``psi`` is non-zero (callables are probed on [0, probe])."""
    if callable(psi):
        r = np.linspace(0.0, probe, 8193)
        st = _on_whole_space(psi, RadialGrid(0.0, r[1], r.size))
    else:
        st = psi
    nz = np.nonzero((st.u != 0) | (st.ut != 0))[0]
    return float(st.grid.r[nz.max()]) if nz.size else 0.0


def dilating_compare(
    psi: RadialState,
    lam: float,
    t_shift: float,
    cfg: SolverConfig,
    mode: str = "linear",
    r_max: float | None = None,
    late: tuple[float, float] = (1.0, 2.0),
) -> dict:
    """Compare the exterior Neumann and whole-space evolutions of ``sigma_lam psi``.

    The data at time 0 are ``S(-t_shift) sigma_lam psi`` (free flow). Returns the
    sup-in-time energy-norm difference on r >= 1, the L^5 L^10 difference, and
    boundary traces: ``trace_v`` = sup_t (|d_t v| + |d_r v|)(t, 1) for the free
    solution, ``trace_u`` = sup_t |d_t u(t, 1)| for the Neumann one and
    ``trace_u_late`` the same over ``t / lam`` in ``late``.
    """
    if not callable(psi) and psi.grid.exterior:
        raise WrongDomain("psi must be whole-space data")
    if mode not in ("linear", "nonlinear"):
        raise ValueError("mode is 'linear' or 'nonlinear'")
    h = cfg.h
    T = cfg.t_final
    if r_max is None:
        support = _support_radius(psi)
        r_max = math.ceil(lam * support + abs(t_shift) + T + 4.0)
    n = int(round(r_max / h)) + 1
    gw = RadialGrid(0.0, h, n)
    whole = _scaled(psi, lam, gw)
    if t_shift != 0.0:
        whole = free_linear_evolve(whole, -t_shift)
    ext = restrict(whole)
    ge = ext.grid

    if mode == "linear":
        npair = neumann_char_pair(ext, T)
        fpair = free_char_pair(whole)
        m = int(round(T / h))
        stride = cfg.snapshot_stride
        times = [k * h for k in range(0, m + 1, stride)]
        u_states = [char_eval(npair, t, ge) for t in times]
        v_states = [restrict(char_eval(fpair, t, gw)) for t in times]
    else:
        ta = evolve_neumann(ext, cfg, record_energy=False)
        tb = evolve_free(whole, cfg, record_energy=False)
        if ta.blew_up or tb.blew_up:
            raise BlowUpRun("comparison run blew up")
        times = ta.times
        u_states = ta.states
        v_states = [restrict(s) for s in tb.states]

    diffs = [a - b for a, b in zip(u_states, v_states)]
    sup_h = max(math.sqrt(norms(d).h_sq) for d in diffs)
    l5 = l5l10(times, diffs)
    tv = [sum(_trace(v)) for v in v_states]
    tu = [_trace(u)[0] for u in u_states]
    tarr = np.asarray(times)
    lw = (tarr >= late[0] * lam) & (tarr <= late[1] * lam)
    return {
        "sup_h_diff": sup_h,
        "l5l10_diff": l5,
        "trace_v": float(max(tv)),
        "trace_u": float(max(tu)),
        "trace_u_late": float(max(np.asarray(tu)[lw])) if np.any(lw) else float("nan"),
        "times": tarr,
    }


def loglog_slope(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """Least-squares slope and intercept of ``log y`` against ``log x``."""
    slope, icept = np.polyfit(np.log(np.asarray(x, float)), np.log(np.asarray(y, float)), 1)
    return float(slope), float(icept)
