"""Benchmark the numba kernels against the pure-numpy fallback.

Times raw kernel throughput on identical uniform draws and the full
mc_outage path under each backend, and checks that the two backends
count the same outages.

    python benchmarks/bench_kernels.py [--samples 4e6] [--m 2] [--workers 2]
"""

import argparse
import os
import time

import numpy as np

from fsorf import McSettings, make_config, mc_outage
from fsorf._kernels import WHICH_CODES, get_kernels


def time_kernel(fn, u, args, repeats=3):
    fn(u[:1000], *args)  # warm up (jit compile on the numba path)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(u, *args)
        best = min(best, time.perf_counter() - t0)
    return result, best


def bench_raw_kernels(n, m):
    print("raw kernel throughput, %d samples, m=%d" % (n, m))
    print("%-8s %12s %12s %9s %s" % ("case", "numpy", "numba", "speedup", "counts"))
    numpy_count, _ = get_kernels("numpy")
    try:
        numba_count, _ = get_kernels("numba")
    except ImportError:
        print("numba not importable; nothing to compare")
        return
    rng = np.random.default_rng(0)
    for which in ("fso", "rf", "hybrid"):
        code = WHICH_CODES[which]
        k = 2 * m if which == "hybrid" else m
        u = rng.random((n, k))
        args = (m, 1.0, 10.0, 10.0, 10.0, code)
        c_np, t_np = time_kernel(numpy_count, u, args)
        c_nb, t_nb = time_kernel(numba_count, u, args)
        agree = "agree" if c_np == c_nb else "DIFFER (%d vs %d)" % (c_np, c_nb)
        print(
            "%-8s %10.1f ms %10.1f ms %8.2fx %s"
            % (which, t_np * 1e3, t_nb * 1e3, t_np / t_nb, agree)
        )


def bench_mc_outage(n, m, workers):
    print("\nend-to-end mc_outage, %d samples, m=%d, workers=%d" % (n, m, workers))
    cfg = make_config(m, 1.0, 10.0, 10.0)
    mc = McSettings(n_samples=n, seed=42, workers=workers)
    for backend in ("numpy", "numba"):
        os.environ["FSORF_NUMBA"] = "0" if backend == "numpy" else "1"
        mc_outage(cfg, "hybrid", McSettings(n_samples=1000, seed=1))  # warm up
        t0 = time.perf_counter()
        res = mc_outage(cfg, "hybrid", mc)
        dt = time.perf_counter() - t0
        print(
            "%-6s p=%.6f ci=%.2e  %.2f s  (%.1f M samples/s)"
            % (backend, res.probability, res.ci_halfwidth, dt, n / dt / 1e6)
        )
    os.environ.pop("FSORF_NUMBA", None)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=float, default=4e6)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--workers", type=int, default=2)
    args = ap.parse_args()
    n = int(args.samples)
    bench_raw_kernels(n, args.m)
    bench_mc_outage(n, args.m, args.workers)


if __name__ == "__main__":
    main()
