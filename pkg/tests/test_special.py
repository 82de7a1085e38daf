import math

import numpy as np
import pytest

from wavelab.core import RadialState, energy, make_grid, norms
from wavelab.errors import NoBlowUpFound, ROutOfRange, TooCloseToSingularity, ZeroEll
from wavelab.special import (
    SQRT3,
    W_ENERGY,
    W_GRAD_SQ,
    StationaryProfile,
    elliptic_residual,
    ground_state,
    ground_state_dr,
    tail_constant,
    w_profile,
    z_shoot,
)


@pytest.fixture(scope="module")
def z1():
    return z_shoot(1.0, 50.0, 1e-3)


class TestGroundState:
    def test_values(self):
        assert ground_state(0.0) == 1.0
        assert ground_state(SQRT3) == pytest.approx(1 / math.sqrt(2), rel=1e-15)

    def test_rescaled_tail(self):
        r = np.linspace(10, 100, 200)
        dev = np.abs(ground_state(r, 2.0) - 2.0 / r) * r**3
        assert np.max(dev) < 10.0

    def test_errors(self):
        with pytest.raises(ZeroEll):
            ground_state(1.0, 0.0)
        with pytest.raises(ROutOfRange):
            ground_state(-1.0)

    def test_derivative(self):
        r = np.linspace(0.1, 5, 50)
        for ell in (0.5, SQRT3, 3.0):
            eps = 1e-6
            fd = (ground_state(r + eps, ell) - ground_state(r - eps, ell)) / (2 * eps)
            np.testing.assert_allclose(ground_state_dr(r, ell), fd, rtol=1e-7, atol=1e-12)

    @pytest.mark.parametrize("ell", [-4, -2, -1, -0.5, 0.5, 1, 2, 4])
    def test_nonzero_trace(self, ell):
        assert abs(ground_state_dr(1.0, ell)) > 1e-3

    def test_residual(self):
        assert elliptic_residual(w_profile(30.0, 1e-3), -1) <= 1e-5
        # W_ell varies on the length scale ell^2, so the mesh follows it
        for ell in (0.7, 3.0):
            assert elliptic_residual(w_profile(30.0, 1e-3 * min(1.0, ell**2), ell), -1) <= 1e-5

    def test_pohozaev_and_energy(self):
        g = make_grid(0.0, 2000.0, 1 / 64)
        W = RadialState.from_functions(g, ground_state)
        n = norms(W)
        # the gradient integral converges like 1/r_max; add the analytic tail 12 pi / r_max
        grad = n.gradient_sq + 12 * math.pi / g.r_max
        assert grad == pytest.approx(W_GRAD_SQ, rel=1e-4)
        assert n.l6_pow6 == pytest.approx(W_GRAD_SQ, rel=1e-4)
        assert W_ENERGY == pytest.approx(W_GRAD_SQ / 3, rel=1e-12)
        assert 0.5 * grad - n.l6_pow6 / 6 == pytest.approx(W_ENERGY, rel=1e-4)


class TestZ:
    def test_singular_radius(self, z1):
        assert z1.z_estimate > 0
        lo, hi = z1.bracket
        assert lo < z1.inner_limit_radius <= hi
        # for ell = 1 the solution is (r^2 - 1/3)^(-1/2), singular at 1/sqrt(3)
        assert z1.z_estimate == pytest.approx(1 / SQRT3, abs=1e-3)

    def test_closed_form(self, z1):
        r = z1.r[z1.r >= 1.0]
        np.testing.assert_allclose(z1.dense(r), (r * r - 1 / 3) ** -0.5, rtol=1e-9)

    def test_residual(self, z1):
        assert elliptic_residual(z1, +1, r_hi=25.0) <= 1e-6 * 10

    def test_residual_other_ells(self):
        for ell in (0.5, 2.0):
            z = z_shoot(ell, 50.0 * max(1.0, ell**2), 1e-3 * min(1.0, ell**2))
            assert elliptic_residual(z, +1) <= 1e-5

    def test_tail(self, z1):
        C = tail_constant(z1, 20.0, 50.0)
        assert 0 < C < 1.0

    def test_monotone(self, z1):
        d = np.diff(z1.f)
        assert np.all(d < 0)

    def test_scaling_covariance(self, z1):
        ell = 2.0
        z2 = z_shoot(ell, 200.0, 1e-3)
        r = z2.r[(z2.r >= 2 * z2.inner_limit_radius) & (z2.r <= 200.0)]
        ref = z1.dense(r / ell**2) / ell
        assert np.max(np.abs(z2.dense(r) - ref) / np.abs(ref)) <= 1e-4
        assert z2.z_estimate == pytest.approx(ell**2 * z1.z_estimate, rel=1e-6)

    def test_near_singularity(self, z1):
        with pytest.raises(TooCloseToSingularity):
            elliptic_residual(z1, +1, r_lo=z1.inner_limit_radius * 1.01)

    def test_bad_inputs(self):
        with pytest.raises(ZeroEll):
            z_shoot(0.0)
        with pytest.raises(ROutOfRange):
            z_shoot(1.0, r_start=5.0)

    def test_no_blowup(self):
        # an absurd cap cannot be reached before the integration stops
        with pytest.raises(NoBlowUpFound):
            z_shoot(1.0, 50.0, 1e-3, cap=1e300)


def test_constant_profile_fails_residual():
    r = np.linspace(1, 5, 401)
    p = StationaryProfile("W", SQRT3, r, np.full_like(r, 2.0))
    assert elliptic_residual(p, -1) == pytest.approx(1.0)
