"""Benchmark the asymptotic grid-scan kernel: numba nopython vs pure numpy.

The scan evaluates, for every tangent grid direction, the minimum over a
unit-direction grid of the plane of the larger bilinear-form magnitude; this
is the hot loop of the oracle.  Run:

    python benchmarks/bench_scan.py
"""

import time

import numpy as np

from curvpar._kernels import HAVE_NUMBA, scan_scores

N_POINTS = 100_000
N_ANGLES = 720
REPEATS = 5

rng = np.random.default_rng(7)
ys = np.linspace(-50.0, 50.0, N_POINTS)
p1 = 0.3 + 1.1 * ys
p2 = -0.2 + 0.4 * ys
q1 = 1.1 + 0.9 * ys
q2 = 0.4 - 1.3 * ys


def timed(force):
    best = float("inf")
    result = None
    for _ in range(REPEATS):
        start = time.perf_counter()
        result = scan_scores(p1, p2, q1, q2, N_ANGLES, force=force)
        best = min(best, time.perf_counter() - start)
    return best, result


print(f"scan workload: {N_POINTS:,} grid points x {N_ANGLES} plane directions")

t_numpy, r_numpy = timed("numpy")
rate = N_POINTS * N_ANGLES / t_numpy / 1e6
print(f"numpy fallback: {t_numpy * 1000:8.1f} ms  ({rate:7.1f}M evals/s)")

if HAVE_NUMBA:
    scan_scores(p1[:16], p2[:16], q1[:16], q2[:16], N_ANGLES, force="numba")  # warm up
    t_numba, r_numba = timed("numba")
    rate = N_POINTS * N_ANGLES / t_numba / 1e6
    print(f"numba kernel:   {t_numba * 1000:8.1f} ms  ({rate:7.1f}M evals/s)")
    print(f"speedup: {t_numpy / t_numba:.2f}x")
    print(f"max |difference|: {np.max(np.abs(r_numpy - r_numba)):.3e}")
else:
    print("numba not installed; only the numpy path was timed")
