#!/usr/bin/env python3
"""Timing comparison of the compiled assembly kernels vs the NumPy fallback.

Measures the two hot kernels (1D tridiagonal stiffness entries and the 2D
nine-point stencil triplets) on meshes at several sizes, plus one full 2D
solver step end to end with each backend patched in.

Run:  python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import math
import time

import numpy as np

import mmfd
from mmfd import RunConfig, run
from mmfd._kernels import available_backends


def time_call(fun, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fun()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_1d(backends, repeats):
    print("\n1D stiffness entries (conservative scheme)")
    print(f"{'J_max':>8} " + " ".join(f"{name:>12}" for name in backends)
          + f" {'speedup':>9}")
    for jmax in (1000, 10000, 100000):
        rng = np.random.default_rng(jmax)
        h = rng.uniform(0.05, 0.2, jmax)
        hdot = rng.uniform(-0.4, 0.4, jmax)
        xdot = rng.uniform(-1.0, 1.0, jmax + 1)
        a_half = rng.uniform(0.5, 2.0, jmax)
        b_half = rng.uniform(-1.0, 1.0, jmax)
        c_int = rng.uniform(0.0, 1.0, jmax - 1)
        times = {}
        for name, mod in backends.items():
            times[name] = time_call(
                lambda m=mod: m.stiffness_entries_1d(
                    0, h, hdot, xdot, a_half, b_half, c_int), repeats)
        row = f"{jmax:>8} " + " ".join(f"{times[n] * 1e3:>10.3f}ms" for n in backends)
        if len(times) == 2:
            row += f" {times['python'] / times['compiled']:>8.1f}x"
        print(row)


def bench_2d(backends, repeats):
    print("\n2D nine-point stencil triplets")
    print(f"{'grid':>8} " + " ".join(f"{name:>12}" for name in backends)
          + f" {'speedup':>9}")
    for n in (40, 100, 200):
        rng = np.random.default_rng(n)
        shape = (n + 1, n + 1)
        bx, by = np.meshgrid(np.arange(n + 1.0), np.arange(n + 1.0), indexing="ij")
        x = np.ascontiguousarray(bx + 0.3 * rng.uniform(-1, 1, shape))
        y = np.ascontiguousarray(by + 0.3 * rng.uniform(-1, 1, shape))
        xdot = np.ascontiguousarray(rng.uniform(-1, 1, shape))
        ydot = np.ascontiguousarray(rng.uniform(-1, 1, shape))
        a_hh = np.ascontiguousarray(rng.uniform(0.5, 2.0, (n, n)))
        b_xi = np.ascontiguousarray(rng.uniform(-1, 1, (n, n - 1)))
        b_eta = np.ascontiguousarray(rng.uniform(-1, 1, (n - 1, n)))
        diag = np.ascontiguousarray(rng.uniform(-2, 0, (n - 1, n - 1)))
        times = {}
        for name, mod in backends.items():
            times[name] = time_call(
                lambda m=mod: m.stiffness_triplets_2d(
                    x, y, xdot, ydot, a_hh, b_xi, b_xi, b_eta, b_eta, diag),
                repeats)
        row = f"{n:>5}x{n:<3}" + " ".join(f"{times[nm] * 1e3:>10.3f}ms" for nm in backends)
        if len(times) == 2:
            row += f" {times['python'] / times['compiled']:>8.1f}x"
        print(row)


def bench_full_solve(backends, repeats):
    import mmfd.disc2d as disc2d

    print("\nfull 2D run (example 5.3, m=1, 41x41, 10 steps)")
    cfg = RunConfig(example="5.3", scheme="2d", m=1, j_max=40, dt=0.1)
    for name, mod in backends.items():
        saved = disc2d._kernels.stiffness_triplets_2d
        disc2d._kernels.stiffness_triplets_2d = mod.stiffness_triplets_2d
        try:
            best = time_call(lambda: run(cfg), repeats)
        finally:
            disc2d._kernels.stiffness_triplets_2d = saved
        print(f"  {name:>10}: {best:.3f}s")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    print(f"active backend: {mmfd.KERNEL_BACKEND}")
    print(f"available: {sorted(backends)}")
    if "compiled" not in backends:
        print("compiled extension not built; benchmarking the fallback only")

    bench_1d(backends, args.repeats)
    bench_2d(backends, args.repeats)
    bench_full_solve(backends, args.repeats)


if __name__ == "__main__":
    main()
