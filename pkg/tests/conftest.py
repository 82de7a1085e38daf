import numpy as np
import pytest

from wavelab.core import RadialState, bump, make_grid


def random_state(rng, grid, lo=None, hi=None, count=3):
    """Sum of random C-infinity bumps for u and u_t inside ``[lo, hi]``."""
    lo = grid.r_min + 0.5 if lo is None else lo
    hi = min(grid.r_max - 1.0, lo + 6.0) if hi is None else hi
    r = grid.r

    def field():
        out = np.zeros_like(r)
        for _ in range(count):
            w = rng.uniform(0.5, 1.5)
            c = rng.uniform(lo + w, max(lo + w, hi - w))
            out += rng.normal() * bump(r, c, w)
        return out

    return RadialState(grid, field(), field())


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def ext_grid():
    return make_grid(1.0, 20.0, 1 / 128)


@pytest.fixture
def whole_grid():
    return make_grid(0.0, 20.0, 1 / 128)


# criterion number -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
