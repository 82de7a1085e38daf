"""One test per acceptance criterion; a PASS/FAIL table is printed at the end of the run."""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE, random_state
from wavelab.core import FOUR_PI, RadialState, bump, extend_P, h_norm, hardy_check, ipp_identity, make_grid, norms, restrict, smooth_step
from wavelab.lingroup import char_eval, duhamel_neumann, neumann_char_pair
from wavelab.scenarios import parse_config, run
from wavelab.solver import SolverConfig, energy_drift, evolve_neumann


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    assert ok, detail


def scenario(kind, **params):
    text = "[scenario]\nname = acceptance\nkind = %s\n" % kind
    text += "".join(f"{k} = {v}\n" for k, v in params.items())
    return run(parse_config(text))


def checks_line(res):
    failed = res.failed
    return "all %d checks" % len(res.checks) if not failed else "failed: " + ", ".join(failed)


def test_1_linear_oracle():
    t0 = time.perf_counter()
    h, T = 1 / 1024, 5.0
    g = make_grid(1.0, 12.0, h)
    data = RadialState.from_functions(g, lambda r: 1.0 / r)
    pair = neumann_char_pair(data, T)
    ts = np.linspace(0.0, T, 501)
    err_char = max(abs(char_eval(pair, t, g).u[0] - math.exp(-t)) for t in ts)
    tr = evolve_neumann(data, SolverConfig(h, T, 1, iota=0), record_energy=False)
    err_lf = max(abs(s.u[0] - math.exp(-t)) for t, s in tr.snapshots)
    dt = time.perf_counter() - t0
    ok = err_char <= 1e-6 and err_lf <= 1e-4 and dt < 5.0
    record(1, ok, f"char {err_char:.2e}, leapfrog {err_lf:.2e}, {dt:.2f} s")


def test_2_energy_conservation():
    parts, ok = [], True
    for iota in (1, -1):
        drift = []
        for h in (1 / 256, 1 / 512):
            g = make_grid(1.0, 22.0, h)
            d = RadialState.from_functions(g, lambda r: bump(r, 3.0, 1.0))
            d = d * (3.0 / h_norm(d))
            t0 = time.perf_counter()
            tr = evolve_neumann(d, SolverConfig(h, 10.0, int(0.25 / h), iota=iota))
            dt = time.perf_counter() - t0
            drift.append(energy_drift(tr))
            ok = ok and tr.status == "completed" and dt < 30.0
        ratio = drift[0] / drift[1]
        ok = ok and drift[1] <= 1e-4 and ratio >= 3.5
        parts.append(f"iota={iota:+d} drift {drift[1]:.2e} ratio {ratio:.2f}")
    record(2, ok, "; ".join(parts))


def test_3_defocusing_scattering():
    res = scenario("DefocusingScatter")
    s = res.summary
    ok = not res.failed and s["local_energy_ratio"] <= 0.01 and s["window_residuals"][-1] <= 0.05
    record(3, ok, f"local ratio {s['local_energy_ratio']:.2e}, residuals "
           + ", ".join(f"{x:.3g}" for x in s["window_residuals"]))


def test_4_focusing_dichotomy():
    lo = scenario("FocusingDichotomy", amplitude=0.8)
    hi = scenario("FocusingDichotomy", amplitude=1.3)
    ok = (not lo.failed and not hi.failed and lo.summary["status"] == "scattered"
          and hi.summary["status"] == "blew_up" and hi.summary["t_star"] < 10)
    record(4, ok, f"0.8: {lo.summary['status']} (residual {lo.summary['window_residuals'][-1]:.3g}); "
           f"1.3: {hi.summary['status']} at t* = {hi.summary['t_star']:.3f}")


def test_5_channels():
    res = scenario("Channels", n_samples=20, R_values="1, 2, 4")
    record(5, not res.failed, f"max relative defect {res.summary['max_relative_defect']:.2e} over 20 data sets")


def test_6_dilating():
    res = scenario("Dilating", lambdas="4, 16, 64", mode="both")
    s = res.summary
    record(6, not res.failed, f"linear {['%.3g' % x for x in s['sup_h_diff_linear']]}, "
           f"nonlinear {['%.3g' % x for x in s['sup_h_diff_nonlinear']]}, trace slope {s['trace_v_slope']:.3f}")


def test_7_pythagoras():
    res = scenario("Profiles", lambdas="16, 64, 256")
    s = res.summary
    record(7, not res.failed, f"H defects {['%.3g' % x for x in s['h_defects']]}, "
           f"L6 defects {['%.3g' % x for x in s['l6_defects']]}")


def test_8_special_solutions():
    res = scenario("ZProfile")
    record(8, not res.failed, checks_line(res))


def test_9_identities():
    rng = np.random.default_rng(42)
    h = 1 / 128
    g = make_grid(1.0, 12.0, h)
    worst_ipp = 0.0
    ok = True
    for _ in range(100):
        s = random_state(rng, g, lo=1.0, hi=10.0)
        hc = hardy_check(s)
        ok = ok and hc.lhs <= hc.rhs * (1 + 1e-10) and hc.boundary_sq <= hc.rhs * (1 + 1e-10)
        lhs, rhs = ipp_identity(s, float(rng.choice([1.0, 2.0, 3.5])))
        scale = norms(s).h_sq / FOUR_PI + s.u[0] ** 2
        worst_ipp = max(worst_ipp, abs(lhs - rhs) / (h * h * scale))
        p = extend_P(s)
        ge, gp = norms(s).gradient_sq, norms(p).gradient_sq
        ok = ok and np.array_equal(restrict(p).u, s.u) and abs(gp - ge) <= 10 * h * (ge + s.u[0] ** 2) + 1e-12
    ok = ok and worst_ipp <= 10
    record(9, ok, f"100 states; worst IPP defect {worst_ipp:.2f} h^2")


def test_10_comparison_bound():
    h = 1 / 256
    M = 1.0
    g = make_grid(1.0, 9.0, h)
    f = lambda tau, r: M * smooth_step(r, 4.0, 5.0)
    worst = -math.inf
    for t in (0.5, 1.0, 1.5, 2.0):
        w = duhamel_neumann(f, t, g)
        worst = max(worst, float(np.max(np.abs(w.u))) - 0.5 * M * t * t)
    record(10, worst <= 10 * h * h, f"max(sup|w| - M t^2/2) = {worst:.3e}, slack {10 * h * h:.2e}")
