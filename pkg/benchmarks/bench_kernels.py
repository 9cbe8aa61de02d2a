"""Compare the numba and numpy Sturm-bisection backends on the radial problem.

    python benchmarks/bench_kernels.py [--grid 20000] [--count 3] [--repeat 3]
"""
import argparse
import time

import numpy as np

from sorelations import kernels
from sorelations.spectral import RadialProblem, coefficient_1d, tridiagonal


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--grid", type=int, default=20000)
    ap.add_argument("--count", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    d, e = tridiagonal(RadialProblem(coefficient_1d("1/2"), grid_points=args.grid))
    ks = np.arange(args.count)
    print(f"grid={args.grid} eigenvalues={args.count} numba={'yes' if kernels.njit else 'no'}")

    if kernels.njit is not None:
        t0 = time.perf_counter()
        kernels.tridiag_eigvals(d[:200], e[:199], ks, jit=True)
        print(f"  jit warm-up (compile or cache load): {time.perf_counter() - t0:.3f} s")
        t_jit, v_jit = best_of(lambda: kernels.tridiag_eigvals(d, e, ks, jit=True), args.repeat)
        print(f"  numba : {t_jit * 1e3:9.2f} ms  {v_jit}")
    t_np, v_np = best_of(lambda: kernels.tridiag_eigvals(d, e, ks, jit=False), args.repeat)
    print(f"  numpy : {t_np * 1e3:9.2f} ms  {v_np}")
    if kernels.njit is not None:
        print(f"  speedup {t_np / t_jit:.1f}x, max |diff| {np.max(np.abs(v_jit - v_np)):.2e}")


if __name__ == "__main__":
    main()
