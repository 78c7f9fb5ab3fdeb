#!/usr/bin/env python3
"""Benchmark the compiled sparse-degree kernel against the pure fallback.

The kernel dominates pipeline runtime (per-sample neighbor sort plus radius
scan over the full distance matrix), so this is the number that matters.
Also asserts the two backends agree bit for bit on every size tried.

Usage: python3 benchmarks/bench_density.py [--sizes 200,500,1000,2000] [--repeats 3]
"""

import argparse
import time

import numpy as np

from gfdc import _density_py
from gfdc.dataset import Dataset, pairwise_distances
from gfdc.density import default_k

try:
    from gfdc import _core
except ImportError:
    _core = None


def bench(fn, d, k, w, repeats):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(d, k, w)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="200,500,1000,2000")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _core is None:
        print("compiled kernel not available; timing the pure fallback only")

    rng = np.random.default_rng(0)
    print(f"{'n':>6} {'k':>4} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for n in sizes:
        pts = rng.uniform(-10, 10, size=(n, 2))
        dm = pairwise_distances(Dataset(pts))
        d = np.ascontiguousarray(dm.d)
        k = default_k(n)
        t_pure, out_pure = bench(
            _density_py.sparse_degree_kernel, d, k, 2, args.repeats
        )
        if _core is None:
            print(f"{n:>6} {k:>4} {t_pure:>10.4f} {'-':>13} {'-':>8}")
            continue
        t_core, out_core = bench(_core.sparse_degree_kernel, d, k, 2, args.repeats)
        for a, b in zip(out_pure, out_core):
            assert np.array_equal(a, b), "backends disagree"
        print(f"{n:>6} {k:>4} {t_pure:>10.4f} {t_core:>13.4f} "
              f"{t_pure / t_core:>7.1f}x")
    if _core is not None:
        print("backends bit-identical on all sizes")


if __name__ == "__main__":
    main()
