"""Time the compiled and NumPy leapfrog kernels on the same problem.

Usage: python3 benchmarks/bench_kernels.py [--h 1/512] [--steps 5000] [--repeat 3]
"""

import argparse
import timeit
from fractions import Fraction

import numpy as np

from wavelab import _kernels_py, kernels
from wavelab.core import bump, make_grid

try:
    from wavelab import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def setup(h):
    g = make_grid(1.0, 30.0, h)
    r = np.ascontiguousarray(g.r)
    zp = np.ascontiguousarray(0.3 * r * bump(r, 4.0, 1.0))
    zc = np.ascontiguousarray(0.3 * r * bump(r + h, 4.0, 1.0))
    return r, zp, zc


def bench(impl, h, steps, repeat):
    r, zp, zc = setup(h)
    w = kernels.boundary_weights(h)

    def once():
        bnd = np.concatenate([[0.0, 0.0], w])
        impl.leapfrog(zp, zc, r, h, 1.0, steps, True, 1e6, None, bnd)

    return min(timeit.repeat(once, number=1, repeat=repeat)), r.size


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--h", default="1/512")
    ap.add_argument("--steps", type=int, default=5000)
    ap.add_argument("--repeat", type=int, default=3)
    a = ap.parse_args()
    h = float(Fraction(a.h))
    rows = [("python", _kernels_py)]
    if _kernels_cy is not None:
        rows.insert(0, ("cython", _kernels_cy))
    times = {}
    for name, impl in rows:
        t, n = bench(impl, h, a.steps, a.repeat)
        times[name] = t
        print(f"{name:7s} {n} nodes x {a.steps} steps: {t:8.3f} s  ({n * a.steps / t / 1e6:7.1f} Mnode-steps/s)")
    if len(times) == 2:
        print(f"speed-up: {times['python'] / times['cython']:.1f}x")


if __name__ == "__main__":
    main()
