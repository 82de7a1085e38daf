"""Config-driven experiments.

A scenario file is flat text::

    [scenario]
    name = focusing-08
    kind = FocusingDichotomy
    amplitude = 0.8      # comments run to the end of the line

Values are typed in the order integer, real, string. Ratios such as
``1/512`` and comma lists such as ``4, 16, 64`` stay strings in the parsed
map and are converted by the runner that reads them.

Each runner returns a :class:`Result` holding CSV rows, scalar summary
values and named pass/fail checks.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

import numpy as np

from .core import (
    FOUR_PI,
    RadialState,
    bump,
    energy,
    h_norm,
    make_grid,
    norms,
    smooth_step,
    trapz,
)
from .diagnostics import (
    ProfileSpec,
    dilating_compare,
    exterior_channel,
    local_energy,
    loglog_slope,
    profile_superpose,
    pythagorean_defect,
    scattering_fit,
    strichartz_running,
    trapping_series,
    virial_series,
)
from .errors import ConfigParseError
from .lingroup import char_eval, duhamel_neumann, neumann_char_pair
from .solver import SolverConfig, energy_drift, evolve_neumann
from .special import (
    W_ENERGY,
    W_GRAD_SQ,
    elliptic_residual,
    ground_state,
    ground_state_dr,
    tail_constant,
    w_profile,
    z_shoot,
)

_INT = re.compile(r"[+-]?\d+")


def _typed(text: str):
    if _INT.fullmatch(text):
        return int(text)
    try:
        return float(text)
    except ValueError:
        return text


@dataclass
class Scenario:
    name: str
    kind: str
    params: dict
    output_dir: str
    lines: dict = field(default_factory=dict)

    def num(self, key: str) -> float:
        """Numeric parameter; ``a/b`` ratio strings are accepted."""
        v = self.params[key]
        if isinstance(v, (int, float)):
            return float(v)
        try:
            return float(Fraction(v.replace(" ", "")))
        except (ValueError, ZeroDivisionError):
            raise ConfigParseError(f"expected a number, got {v!r}", self.lines.get(key), key) from None

    def integer(self, key: str) -> int:
        v = self.num(key)
        if v != int(v):
            raise ConfigParseError(f"expected an integer, got {self.params[key]!r}", self.lines.get(key), key)
        return int(v)

    def nums(self, key: str) -> list:
        v = self.params[key]
        if isinstance(v, (int, float)):
            return [float(v)]
        out = []
        for part in v.split(","):
            try:
                out.append(float(Fraction(part.strip())))
            except (ValueError, ZeroDivisionError):
                raise ConfigParseError(f"bad list entry {part.strip()!r}", self.lines.get(key), key) from None
        return out

    def text(self, key: str) -> str:
        return str(self.params[key])

    def resolved(self) -> dict:
        return {"name": self.name, "kind": self.kind, "output_dir": self.output_dir, "params": dict(self.params)}


@dataclass
class Result:
    series: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    grid: dict = field(default_factory=dict)

    def add(self, diagnostic: str, xs, ys):
        for x, y in zip(xs, ys):
            self.series.append((diagnostic, float(x), float(y)))

    @property
    def failed(self) -> list:
        return [k for k, ok in self.checks.items() if not ok]


def _grid_info(g) -> dict:
    return {"r_min": g.r_min, "r_max": g.r_max, "h": g.h, "n_points": g.n_points}


def _strictly_decreasing(xs) -> bool:
    return all(b < a for a, b in zip(xs, xs[1:]))


# ------------------------------------------------------------------ runners


def run_linear_group(sc: Scenario) -> Result:
    h, T = sc.num("h"), sc.num("t_final")
    res = Result()
    g = make_grid(1.0, sc.num("r_max"), h)
    res.grid = _grid_info(g)
    data = RadialState.from_functions(g, lambda r: 1.0 / r)
    pair = neumann_char_pair(data, T)
    n = int(round(T / h))
    ts = h * np.arange(n + 1)
    u_char = np.array([char_eval(pair, t, g).u[0] for t in ts])
    traj = evolve_neumann(data, SolverConfig(h, T, 1, iota=0), record_energy=False)
    t_lf = np.asarray(traj.times)
    u_lf = np.array([s.u[0] for s in traj.states])
    err_char = float(np.max(np.abs(u_char - np.exp(-ts))))
    err_lf = float(np.max(np.abs(u_lf - np.exp(-t_lf))))
    stride = max(1, n // 200)
    res.add("u_char_at_1", ts[::stride], u_char[::stride])
    res.add("u_leapfrog_at_1", t_lf[::stride], u_lf[::stride])
    res.add("exp_minus_t", ts[::stride], np.exp(-ts[::stride]))

    # forced problem with zero data: |w| <= M t^2 / 2
    M = sc.num("forcing_M")
    tf = sc.num("forcing_t")
    r0, r1 = sc.num("forcing_r0"), sc.num("forcing_r1")
    gf = make_grid(1.0, r1 + tf + 2.0, h)

    def f(tau, r):
        return M * smooth_step(r, r0, r1)

    w_times = [tf * k / 4 for k in range(1, 5)]
    excess = -math.inf
    for t in w_times:
        w = duhamel_neumann(f, t, gf)
        sup_w = float(np.max(np.abs(w.u)))
        res.add("sup_w", [t], [sup_w])
        res.add("half_M_t2", [t], [0.5 * M * t * t])
        excess = max(excess, sup_w - 0.5 * M * t * t)

    res.summary.update(
        max_err_char=err_char,
        max_err_leapfrog=err_lf,
        comparison_excess=excess,
        comparison_slack=10 * h * h,
        status=traj.status,
    )
    res.checks["char_eval_vs_exp"] = err_char <= 1e-6
    res.checks["leapfrog_vs_exp"] = err_lf <= 1e-4
    res.checks["comparison_bound"] = excess <= 10 * h * h
    return res


def _bump_data(sc: Scenario, g):
    c, w = sc.num("center"), sc.num("width")
    d = RadialState.from_functions(g, lambda r: bump(r, c, w))
    return d * (sc.num("h_norm") / h_norm(d))


def _windows(sc: Scenario):
    edges = sc.nums("windows")
    return list(zip(edges[:-1], edges[1:]))


def run_defocusing_scatter(sc: Scenario) -> Result:
    h, T = sc.num("h"), sc.num("t_final")
    res = Result()
    g = make_grid(1.0, sc.num("r_max"), h)
    res.grid = _grid_info(g)
    data = _bump_data(sc, g)
    stride = max(1, int(round(sc.num("snapshot_dt") / h)))
    traj = evolve_neumann(data, SolverConfig(h, T, stride, iota=1))
    res.summary["status"] = traj.status
    if traj.blew_up:
        res.checks["completed"] = False
        return res
    drift = energy_drift(traj)
    res.add("energy", traj.times, [e.total for e in traj.energy_series])
    R = sc.num("R_local")
    le = local_energy(traj, R)
    ts = [s[0] for s in le["series"]]
    es = [s[1] for s in le["series"]]
    res.add("local_energy", ts, es)
    res.add("strichartz_running", traj.times, strichartz_running(traj))
    residuals = []
    for w in _windows(sc):
        fit = scattering_fit(traj, w)
        residuals.append(fit.relative_residual)
        res.add("scattering_residual", [p[0] for p in fit.series], [p[1] for p in fit.series])
    ratio = es[-1] / es[0] if es[0] > 0 else 0.0
    res.summary.update(
        energy_drift=drift,
        local_energy_ratio=ratio,
        local_energy_integral=le["time_integral"],
        window_residuals=residuals,
        strichartz=float(strichartz_running(traj)[-1]),
    )
    res.checks["completed"] = True
    res.checks["energy_drift"] = drift <= 1e-4
    res.checks["local_energy_decay"] = ratio <= 0.01
    res.checks["residual_small"] = residuals[-1] <= 0.05
    res.checks["residual_decreasing"] = _strictly_decreasing(residuals)
    return res


def run_focusing_dichotomy(sc: Scenario) -> Result:
    h, T = sc.num("h"), sc.num("t_final")
    amp = sc.num("amplitude")
    res = Result()
    g = make_grid(1.0, sc.num("r_max"), h)
    res.grid = _grid_info(g)
    data = RadialState.from_functions(g, lambda r: amp * ground_state(r))
    e0 = energy(data, -1).total
    grad0 = norms(data).gradient_sq
    expected = "scattered" if grad0 < W_GRAD_SQ else "blew_up"
    stride = max(1, int(round(sc.num("snapshot_dt") / h)))
    cfg = SolverConfig(h, T, stride, iota=-1, quiet_tol=sc.num("quiet_tol"))
    traj = evolve_neumann(data, cfg)
    trap = trapping_series(traj)
    res.add("gradient_gap", [p[0] for p in trap["series"]], [p[1] for p in trap["series"]])
    res.add("strichartz_running", traj.times, strichartz_running(traj))
    res.summary.update(
        amplitude=amp,
        energy=e0,
        energy_threshold=W_ENERGY,
        gradient_sq=grad0,
        gradient_threshold=W_GRAD_SQ,
        expected=expected,
        trapping_sign=trap["sign"],
        trapping_delta=trap["delta"],
        t_star=traj.t_star,
    )
    res.checks["below_energy_threshold"] = e0 < W_ENERGY
    res.checks["trapping_sign_constant"] = trap["sign_constant"] and trap["delta"] > 0
    if traj.blew_up:
        res.summary["status"] = "blew_up"
        res.checks["blow_up_time"] = traj.t_star < sc.num("t_star_max")
    else:
        res.add("energy", traj.times, [e.total for e in traj.energy_series])
        residuals = []
        for w in _windows(sc):
            fit = scattering_fit(traj, w)
            residuals.append(fit.relative_residual)
            res.add("scattering_residual", [p[0] for p in fit.series], [p[1] for p in fit.series])
        scattered = residuals[-1] <= sc.num("residual_tol")
        res.summary.update(status="scattered" if scattered else "undecided", window_residuals=residuals,
                           energy_drift=energy_drift(traj))
        res.checks["scattering_residual"] = scattered
    res.checks["outcome_matches_threshold"] = res.summary["status"] == expected
    return res


def _gauss_profile(r):
    return np.exp(-r * r) * smooth_step(r, 3.0, 4.5)


def run_dilating(sc: Scenario) -> Result:
    h = sc.num("h")
    lams = sc.nums("lambdas")
    modes = ["linear", "nonlinear"] if sc.text("mode") == "both" else [sc.text("mode")]
    res = Result()
    stride = sc.integer("snapshot_stride")
    res.grid = {"h": h, "r_min": 0.0}
    for mode in modes:
        sups, l5s, tv, tu = [], [], [], []
        for lam in lams:
            T = sc.num("horizon_factor") * lam + sc.num("horizon_pad")
            cfg = SolverConfig(h, T, stride, iota=1)
            out = dilating_compare(_gauss_profile, lam, sc.num("t_shift"), cfg, mode=mode)
            sups.append(out["sup_h_diff"])
            l5s.append(out["l5l10_diff"])
            tv.append(out["trace_v"])
            tu.append(out["trace_u_late"])
        res.add(f"sup_h_diff_{mode}", lams, sups)
        res.add(f"l5l10_diff_{mode}", lams, l5s)
        res.summary[f"sup_h_diff_{mode}"] = sups
        res.summary[f"l5l10_diff_{mode}"] = l5s
        res.checks[f"decreasing_{mode}"] = _strictly_decreasing(sups)
        res.checks[f"halved_{mode}"] = sups[-1] <= 0.5 * sups[0]
        if mode == "linear":
            sv, cv = loglog_slope(lams, tv)
            su, cu = loglog_slope(lams, tu)
            res.add("trace_v", lams, tv)
            res.add("trace_u_late", lams, tu)
            res.summary.update(trace_v_slope=sv, trace_v_const=math.exp(cv), trace_u_slope=su, trace_u_const=math.exp(cu))
            res.checks["trace_v_exponent"] = abs(sv + 1.5) <= 0.3
            res.checks["trace_u_exponent"] = abs(su + 1.5) <= 0.3
    return res


def _random_profile(rng, r, lo, hi, count):
    u = np.zeros_like(r)
    for _ in range(count):
        u += rng.normal() * bump(r, rng.uniform(lo, hi), rng.uniform(0.5, 2.0))
    return u


def run_channels(sc: Scenario) -> Result:
    h = sc.num("h")
    rng = np.random.default_rng(sc.integer("seed"))
    g = make_grid(0.0, sc.num("r_max"), h)
    res = Result(grid=_grid_info(g))
    Rs = sc.nums("R_values")
    tp = sc.num("t_probe") if "t_probe" in sc.params else 2.0 * g.r_max / 3.0
    worst = 0.0
    for k in range(sc.integer("n_samples")):
        u0 = _random_profile(rng, g.r, 1.0, 6.0, 3)
        u1 = _random_profile(rng, g.r, 1.0, 6.0, 3)
        data = RadialState(g, u0, u1)
        for R in Rs:
            rep = exterior_channel(data, R, tp)
            worst = max(worst, rep.relative_defect)
            res.series.append((f"defect_R{R:g}", float(k), rep.relative_defect))
    res.summary.update(max_relative_defect=worst, t_probe=tp, n_samples=sc.integer("n_samples"))
    res.checks["channel_identity"] = worst <= 1e-6
    return res


def run_z_profile(sc: Scenario) -> Result:
    ell, r_start, h = sc.num("ell"), sc.num("r_start"), sc.num("h")
    res = Result()
    z = z_shoot(ell, r_start, h)
    res.grid = {"r_min": float(z.r[0]), "r_max": float(z.r[-1]), "h": h, "n_points": int(z.r.size)}
    z_res = elliptic_residual(z, +1, r_hi=r_start / 2)
    lo, hi = sc.nums("tail_window")
    C = tail_constant(z, lo, hi)
    dz = np.diff(z.f)
    monotone = bool(np.all(dz > 0) or np.all(dz < 0))

    ell2 = sc.num("ell_scaled")
    z2 = z_shoot(ell2, r_start * ell2**2, h)
    r = z2.r[(z2.r >= 2.0 * z2.inner_limit_radius) & (z2.r / ell2**2 <= r_start)]
    ref = z.dense(r / ell2**2) / ell2
    cov = float(np.max(np.abs(z2.dense(r) - ref) / np.abs(ref)))

    w = w_profile(sc.num("w_r_max"), h)
    w_res = elliptic_residual(w, -1)
    ells = sc.nums("trace_ells")
    traces = [abs(float(ground_state_dr(1.0, e))) for e in ells]
    stride = max(1, z.r.size // 400)
    res.add("Z", z.r[::stride], z.f[::stride])
    res.add("dW_ell_at_1", ells, traces)
    res.summary.update(
        z_estimate=z.z_estimate,
        z_bracket=list(z.bracket),
        z_residual=z_res,
        tail_constant=C,
        monotone=monotone,
        scaling_covariance=cov,
        w_residual=w_res,
        min_w_trace=min(traces),
    )
    res.checks["z_residual"] = z_res <= 1e-5
    res.checks["w_residual"] = w_res <= 1e-5
    res.checks["tail_constant_finite"] = math.isfinite(C) and C > 0
    res.checks["monotone"] = monotone
    res.checks["scaling_covariance"] = cov <= 1e-4
    res.checks["w_trace_nonzero"] = min(traces) > 1e-3
    return res


def run_profiles(sc: Scenario) -> Result:
    h = sc.num("h")
    lams = sc.nums("lambdas")
    n = len(lams)
    g = make_grid(1.0, sc.num("r_max_factor") * max(lams), h)
    res = Result(grid=_grid_info(g))
    c, w, t1 = sc.num("center"), sc.num("width"), sc.num("compact_time")
    p1 = ProfileSpec(lambda r: bump(r, c, w), (1.0,) * n, (t1,) * n, "compact")
    p2 = ProfileSpec(lambda r: r * r * _gauss_profile(r), tuple(lams), (0.0,) * n, "dilating")
    hd, ld = [], []
    for k in range(n):
        data = profile_superpose([p1, p2], k, g)
        d = pythagorean_defect(data, [p1, p2], k)
        hd.append(d["h_defect"])
        ld.append(d["l6_defect"])
    res.add("h_defect", lams, hd)
    res.add("l6_defect", lams, ld)
    res.summary.update(h_defects=hd, l6_defects=ld)
    res.checks["h_decreasing"] = _strictly_decreasing(hd)
    res.checks["l6_decreasing"] = _strictly_decreasing(ld)
    res.checks["h_quartered"] = hd[-1] <= 0.25 * hd[0]
    res.checks["l6_quartered"] = ld[-1] <= 0.25 * ld[0]
    return res


def run_local_decay(sc: Scenario) -> Result:
    h, T = sc.num("h"), sc.num("t_final")
    g = make_grid(1.0, sc.num("r_max"), h)
    res = Result(grid=_grid_info(g))
    data = _bump_data(sc, g)
    stride = max(1, int(round(sc.num("snapshot_dt") / h)))
    runs = {}
    for scale in (1.0, 2.0):
        runs[scale] = evolve_neumann(data * scale, SolverConfig(h, T, stride, iota=0), record_energy=False)
    hsq = norms(data).h_sq
    ratios, consts = [], []
    for R in sc.nums("R_values"):
        a = local_energy(runs[1.0], R)
        b = local_energy(runs[2.0], R)
        ratios.append(b["time_integral"] / a["time_integral"])
        consts.append(a["time_integral"] / hsq)
        res.add(f"local_energy_R{R:g}", [p[0] for p in a["series"]], [p[1] for p in a["series"]])
    traj = runs[1.0]
    weighted = [math.sqrt(FOUR_PI * trapz(s.u**2, h)) for s in traj.states]
    res.add("weighted_l2", traj.times, weighted)
    res.summary.update(homogeneity_ratios=ratios, C_R=consts, weighted_final_ratio=weighted[-1] / weighted[0])
    res.checks["homogeneity"] = all(abs(q - 4.0) <= 1e-9 for q in ratios)
    return res


def run_virial(sc: Scenario) -> Result:
    h, T = sc.num("h"), sc.num("t_final")
    g = make_grid(1.0, sc.num("r_max"), h)
    res = Result(grid=_grid_info(g))
    amp, c0, c1 = sc.num("amplitude"), sc.num("cutoff_start"), sc.num("cutoff_end")
    data = RadialState.from_functions(g, lambda r: amp * ground_state(r) * smooth_step(r, c0, c1))
    stride = max(1, int(round(sc.num("snapshot_dt") / h)))
    traj = evolve_neumann(data, SolverConfig(h, T, stride, iota=-1), record_energy=False)
    v = virial_series(traj)
    ok = np.isfinite(v.d2y_measured)
    gap = v.d2y_measured[ok] - v.d2y_lower[ok]
    res.add("y", v.t, v.y)
    res.add("dy", v.t, v.dy)
    res.add("d2y_measured", v.t[ok], v.d2y_measured[ok])
    res.add("d2y_lower", v.t, v.d2y_lower)
    res.summary.update(
        status=traj.status,
        t_star=traj.t_star,
        energy=energy(data, -1).total,
        gradient_sq=norms(data).gradient_sq,
        delta0=v.delta0,
        min_gap=float(gap.min()) if gap.size else None,
    )
    res.checks["blew_up"] = traj.blew_up
    res.checks["delta0_positive"] = v.delta0 > 0
    res.checks["lower_bound"] = bool(gap.size) and float(gap.min()) >= -sc.num("tolerance")
    return res


@dataclass(frozen=True)
class Kind:
    runner: Callable[[Scenario], Result]
    statement: str
    defaults: dict
    required: tuple = ()


KINDS = {
    "LinearGroup": Kind(
        run_linear_group,
        "exact Neumann group: u(t,1) = exp(-t) for data (1/r, 0); forced bound |w| <= M t^2/2",
        dict(h="1/1024", t_final=5.0, r_max=12.0, forcing_M=1.0, forcing_t=2.0, forcing_r0=4.0, forcing_r1=5.0),
    ),
    "DefocusingScatter": Kind(
        run_defocusing_scatter,
        "defocusing global existence and scattering (local energy decay, radiation fit)",
        dict(h="1/512", t_final=20.0, r_max=25.0, center=2.0, width=0.9, h_norm=3.0, snapshot_dt=0.5,
             R_local=2.0, windows="5, 10, 15, 20"),
    ),
    "FocusingDichotomy": Kind(
        run_focusing_dichotomy,
        "focusing dichotomy below the ground-state energy: scattering vs blow-up by the gradient threshold",
        dict(h="1/256", t_final=20.0, r_max=200.0, snapshot_dt=0.25, quiet_tol=1e-4, windows="10, 15, 20",
             residual_tol=0.05, t_star_max=10.0),
        ("amplitude",),
    ),
    "Dilating": Kind(
        run_dilating,
        "exterior vs whole-space evolution of concentrating data; boundary trace scaling",
        dict(h="1/32", lambdas="4, 16, 64", mode="both", snapshot_stride=8, horizon_factor=3.0,
             horizon_pad=8.0, t_shift=0.0),
    ),
    "Channels": Kind(
        run_channels,
        "exterior energy channels of free radial waves",
        dict(h="1/256", r_max=30.0, R_values="1, 2, 4", n_samples=20, seed=42),
    ),
    "ZProfile": Kind(
        run_z_profile,
        "stationary solutions: ground state W, its rescalings, the singular exterior solution Z",
        dict(ell=1.0, r_start=50.0, h=0.001, tail_window="20, 50", ell_scaled=2.0, w_r_max=30.0,
             trace_ells="-4, -2, -1, -0.5, 0.5, 1, 2, 4"),
    ),
    "Profiles": Kind(
        run_profiles,
        "linear profile decomposition: Pythagorean expansions for orthogonal parameters",
        dict(h="1/64", lambdas="16, 64, 256", r_max_factor=5.0, center=2.5, width=1.0, compact_time=0.0),
    ),
    "LocalDecay": Kind(
        run_local_decay,
        "local energy decay for the linear Neumann flow; weighted L2 decay",
        dict(h="1/256", t_final=20.0, r_max=30.0, center=3.0, width=1.0, h_norm=1.0, snapshot_dt=0.25,
             R_values="2, 4, 8"),
    ),
    "Virial": Kind(
        run_virial,
        "virial convexity before blow-up for supercritical focusing data",
        dict(h="1/256", t_final=5.0, r_max=90.0, amplitude=1.3, cutoff_start=20.0, cutoff_end=80.0,
             snapshot_dt="1/64", tolerance=0.0),
    ),
}

_RESERVED = ("name", "kind", "output_dir")


def parse_config(text: str, source: str = "<config>") -> Scenario:
    """Parse scenario text; all problems raise ``ConfigParseError`` with line and field."""
    raw: dict = {}
    lines: dict = {}
    seen_header = False
    for no, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("["):
            if body != "[scenario]":
                raise ConfigParseError(f"unknown section {body}", no)
            if seen_header:
                raise ConfigParseError("duplicate [scenario] section", no)
            seen_header = True
            continue
        if not seen_header:
            raise ConfigParseError("expected [scenario] header first", no)
        if "=" not in body:
            raise ConfigParseError("expected 'key = value'", no)
        key, value = (s.strip() for s in body.split("=", 1))
        if not key:
            raise ConfigParseError("empty key", no)
        if key in raw:
            raise ConfigParseError("duplicate key", no, key)
        if not value:
            raise ConfigParseError("empty value", no, key)
        raw[key] = _typed(value)
        lines[key] = no
    if not seen_header:
        raise ConfigParseError(f"{source}: no [scenario] section")
    for key in ("name", "kind"):
        if key not in raw:
            raise ConfigParseError("missing required key", None, key)
    kind = raw["kind"]
    if kind not in KINDS:
        raise ConfigParseError(f"unknown kind {kind!r}", lines["kind"], "kind")
    spec = KINDS[kind]
    params = dict(spec.defaults)
    for key, value in raw.items():
        if key in _RESERVED:
            continue
        if key not in spec.defaults and key not in spec.required:
            raise ConfigParseError(f"unknown parameter for {kind}", lines[key], key)
        params[key] = value
    for key in spec.required:
        if key not in params:
            raise ConfigParseError(f"{kind} needs this parameter", None, key)
    name = str(raw["name"])
    out = str(raw.get("output_dir", Path("out") / name))
    sc = Scenario(name, kind, params, out, lines)
    for key in ("h", "t_final"):
        if key in params and not sc.num(key) > 0:
            raise ConfigParseError("must be positive", lines.get(key), key)
    return sc


def load_config(path) -> Scenario:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigParseError(f"cannot read {p}: {exc}") from None
    return parse_config(text, str(p))


def run(sc: Scenario) -> Result:
    return KINDS[sc.kind].runner(sc)
