import math

import numpy as np
import pytest

from conftest import random_state
from wavelab.core import RadialState, bump, d_dr, energy, h_norm, make_grid, norms, restrict, smooth_step
from wavelab.errors import DomainTooSmallForHorizon, GridMismatch, WrongDomain
from wavelab.lingroup import char_eval, duhamel_neumann, neumann_char_pair
from wavelab.solver import (
    SolverConfig,
    detect_blowup,
    energy_drift,
    evolve_free,
    evolve_neumann,
    l5l10,
    perturbation_compare,
)
from wavelab.special import ground_state


def bump_data(grid, norm=3.0, c=3.0, w=1.0):
    d = RadialState.from_functions(grid, lambda r: bump(r, c, w))
    return d * (norm / h_norm(d))


class TestConfig:
    @pytest.mark.parametrize(
        "kw",
        [dict(h=0.0, t_final=1.0), dict(h=0.1, t_final=0.0), dict(h=0.1, t_final=1.0, snapshot_stride=0),
         dict(h=0.1, t_final=1.0, blowup_cap=0.0), dict(h=0.1, t_final=1.0, iota=2)],
    )
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            SolverConfig(**kw)

    def test_steps(self):
        assert SolverConfig(1 / 64, 2.0).n_steps == 128


class TestBasics:
    def test_zero_data(self, ext_grid):
        z = RadialState(ext_grid, np.zeros(ext_grid.n_points))
        tr = evolve_neumann(z, SolverConfig(ext_grid.h, 2.0, 32))
        assert tr.status == "completed"
        assert all(not np.any(s.u) for s in tr.states)

    def test_times_and_alignment(self, ext_grid, rng):
        d = random_state(rng, ext_grid, hi=6.0)
        tr = evolve_neumann(d, SolverConfig(ext_grid.h, 1.0, 40))
        assert np.all(np.diff(tr.times) > 0)
        assert tr.times[-1] == pytest.approx(1.0)
        assert len(tr.energy_series) == len(tr.times)

    def test_domain_checks(self, ext_grid, whole_grid, rng):
        with pytest.raises(WrongDomain):
            evolve_neumann(RadialState(whole_grid, np.zeros(whole_grid.n_points)), SolverConfig(whole_grid.h, 1.0))
        with pytest.raises(WrongDomain):
            evolve_free(RadialState(ext_grid, np.zeros(ext_grid.n_points)), SolverConfig(ext_grid.h, 1.0))
        with pytest.raises(DomainTooSmallForHorizon):
            evolve_neumann(random_state(rng, ext_grid), SolverConfig(ext_grid.h, 18.0))
        with pytest.raises(GridMismatch):
            evolve_neumann(random_state(rng, ext_grid), SolverConfig(ext_grid.h / 2, 1.0))

    def test_data_not_quiet(self):
        g = make_grid(1.0, 8.0, 1 / 64)
        d = RadialState.from_functions(g, lambda r: bump(r, 5.0, 2.0))
        with pytest.raises(DomainTooSmallForHorizon):
            evolve_neumann(d, SolverConfig(g.h, 3.0))

    def test_detect_blowup(self, ext_grid):
        u = np.zeros(ext_grid.n_points)
        assert not detect_blowup(RadialState(ext_grid, u), 1e6)
        u[0] = 2e6
        assert detect_blowup(RadialState(ext_grid, u), 1e6)


class TestLinearOracles:
    def test_exp_trace(self):
        g = make_grid(1.0, 12.0, 1 / 1024)
        d = RadialState.from_functions(g, lambda r: 1.0 / r)
        tr = evolve_neumann(d, SolverConfig(g.h, 5.0, 8, iota=0), record_energy=False)
        err = max(abs(s.u[0] - math.exp(-t)) for t, s in tr.snapshots)
        assert err <= 1e-4

    def test_tiny_amplitude_matches_char_eval(self):
        g = make_grid(1.0, 16.0, 1 / 1024)
        d = bump_data(g) * (1e-4 / 3.0)
        tr = evolve_neumann(d, SolverConfig(g.h, 5.0, 256, iota=1), record_energy=False)
        p = neumann_char_pair(d, 5.0)
        err = max(np.max(np.abs(s.u - char_eval(p, t, g).u)) for t, s in tr.snapshots)
        assert err <= 1e-8

    def test_amplitude_rate(self):
        # nonlinear minus linear scales like amplitude^5
        g = make_grid(1.0, 12.0, 1 / 256)
        base = bump_data(g, 1.0)
        diffs = []
        for a in (0.5, 1.0):
            d = base * a
            nl = evolve_neumann(d, SolverConfig(g.h, 3.0, 768, iota=1), record_energy=False).states[-1]
            li = evolve_neumann(d, SolverConfig(g.h, 3.0, 768, iota=0), record_energy=False).states[-1]
            diffs.append(np.max(np.abs(nl.u - li.u)))
        assert diffs[1] / diffs[0] == pytest.approx(32.0, rel=0.05)

    def test_neumann_condition(self):
        g = make_grid(1.0, 20.0, 1 / 256)
        tr = evolve_neumann(bump_data(g, c=2.5), SolverConfig(g.h, 6.0, 64, iota=1), record_energy=False)
        for s in tr.states[1:]:
            u = s.u
            assert abs((-3 * u[0] + 4 * u[1] - u[2]) / (2 * g.h)) <= 10 * g.h

    def test_forced_comparison_bound(self):
        # zero data, |f| <= M: |w(t)| <= M t^2 / 2
        h = 1 / 256
        g = make_grid(1.0, 9.0, h)
        M = 1.0
        f = lambda t, r: M * smooth_step(r, 4.0, 5.0)
        z = RadialState(g, np.zeros(g.n_points))
        tr = evolve_neumann(z, SolverConfig(h, 2.0, 32, iota=0), forcing=f, record_energy=False)
        for t, s in tr.snapshots:
            assert np.max(np.abs(s.u)) <= 0.5 * M * t * t + 10 * h * h


class TestEnergy:
    @pytest.mark.parametrize("iota", [1, -1])
    def test_conservation_and_order(self, iota):
        drift = []
        for h in (1 / 256, 1 / 512):
            g = make_grid(1.0, 22.0, h)
            tr = evolve_neumann(bump_data(g), SolverConfig(h, 10.0, int(0.25 / h), iota=iota))
            assert tr.status == "completed"
            drift.append(energy_drift(tr))
        assert drift[1] <= 1e-4
        assert drift[0] / drift[1] >= 3.5

    def test_free_conservation(self):
        h = 1 / 512
        g = make_grid(0.0, 20.0, h)
        d = RadialState.from_functions(g, lambda r: bump(r, 3.0, 1.0))
        d = d * (3.0 / h_norm(d))
        tr = evolve_free(d, SolverConfig(h, 10.0, 128, iota=1))
        assert tr.status == "completed"
        assert energy_drift(tr) <= 1e-4

    def test_defocusing_bounded(self):
        g = make_grid(1.0, 22.0, 1 / 256)
        d = bump_data(g, 3.0, c=2.0, w=0.9)
        tr = evolve_neumann(d, SolverConfig(g.h, 10.0, 64, iota=1), record_energy=False)
        peak = max(np.max(np.abs(s.u)) for s in tr.states)
        assert peak <= 10 * max(1.0, np.max(np.abs(d.u)))


class TestFiniteSpeed:
    def test_support(self):
        h = 1 / 128
        g = make_grid(1.0, 16.0, h)
        d = RadialState.from_functions(g, lambda r: bump(r, 3.0, 1.0))
        tr = evolve_neumann(d, SolverConfig(h, 5.0, 64, iota=1), record_energy=False)
        for t, s in tr.snapshots:
            far = g.r > 4.0 + t + 2 * h
            assert np.max(np.abs(s.u[far]), initial=0.0) <= 1e-12


class TestBlowUp:
    def test_focusing_exterior(self):
        g = make_grid(1.0, 60.0, 1 / 128)
        d = RadialState.from_functions(g, lambda r: 1.3 * ground_state(r))
        tr = evolve_neumann(d, SolverConfig(g.h, 10.0, 16, iota=-1, quiet_tol=1e-3))
        assert tr.blew_up and tr.t_star < 10
        assert tr.times[-1] < tr.t_star
        assert len(tr.energy_series) == len(tr.times)

    def test_focusing_whole_space(self):
        g = make_grid(0.0, 60.0, 1 / 128)
        d = RadialState.from_functions(g, lambda r: 1.01 * ground_state(r))
        tr = evolve_free(d, SolverConfig(g.h, 20.0, 64, iota=-1, quiet_tol=1e-3), record_energy=False)
        assert tr.blew_up


class TestPerturbation:
    def test_identical(self, ext_grid, rng):
        d = random_state(rng, ext_grid, hi=6.0)
        tr = evolve_neumann(d, SolverConfig(ext_grid.h, 2.0, 16))
        out = perturbation_compare(tr, tr)
        assert out == {"l5l10_diff": 0.0, "sup_h_diff": 0.0}

    def test_mismatch(self, ext_grid, rng):
        d = random_state(rng, ext_grid, hi=6.0)
        a = evolve_neumann(d, SolverConfig(ext_grid.h, 2.0, 16))
        b = evolve_neumann(d, SolverConfig(ext_grid.h, 2.0, 32))
        with pytest.raises(GridMismatch):
            perturbation_compare(a, b)

    def test_stability_constant(self):
        g = make_grid(1.0, 22.0, 1 / 256)
        d = bump_data(g)
        delta = RadialState.from_functions(g, lambda r: bump(r, 4.0, 1.0))
        delta = delta * (1e-3 / h_norm(delta))
        cfg = SolverConfig(g.h, 10.0, 32, iota=1)
        out = perturbation_compare(evolve_neumann(d, cfg), evolve_neumann(d + delta, cfg))
        assert out["l5l10_diff"] <= 100 * 1e-3

    def test_small_data_linear(self):
        g = make_grid(1.0, 22.0, 1 / 256)
        d = bump_data(g) * (1e-4 / 3.0)
        a = evolve_neumann(d, SolverConfig(g.h, 10.0, 32, iota=1))
        b = evolve_neumann(d, SolverConfig(g.h, 10.0, 32, iota=0))
        out = perturbation_compare(a, b)
        assert out["sup_h_diff"] <= 1e-10 and out["l5l10_diff"] <= 1e-10

    def test_l5l10_single_snapshot(self, ext_grid):
        assert l5l10([0.0], [RadialState(ext_grid, np.ones(ext_grid.n_points))]) == 0.0
