#!/usr/bin/env python3
"""Benchmark the two permutation-null kernels.

Times the compiled direct-transform kernel against the numpy batched-FFT
fallback on identical inputs, across series lengths and batch sizes, and
reports the speedup.  This is where the auto-dispatch crossover
(kernels.AUTO_NATIVE_MAX_N) comes from.

Usage:
    python benchmarks/bench_kernels.py [--lengths 16,30,60,120,240,512] [--batch 200]
"""

import argparse
import time

import numpy as np

from permspec import kernels, rng


def time_call(func, *args, min_seconds=0.2):
    func(*args)  # warm up
    best = float("inf")
    total = 0.0
    while total < min_seconds:
        start = time.perf_counter()
        func(*args)
        elapsed = time.perf_counter() - start
        best = min(best, elapsed)
        total += elapsed
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lengths", default="16,30,60,120,240,512",
                        help="comma-separated series lengths")
    parser.add_argument("--batch", type=int, default=200,
                        help="permutations per call (default 200)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    lengths = [int(part) for part in args.lengths.split(",")]
    have_native = "native" in kernels.available_backends()
    if not have_native:
        print("compiled kernel not built; timing the numpy fallback only")

    generator = np.random.default_rng(args.seed)
    print(f"batch = {args.batch} permutations per call")
    header = f"{'n':>6} {'numpy ms':>10} {'native ms':>10} {'speedup':>8}  auto picks"
    print(header)
    print("-" * len(header))
    for n in lengths:
        values = generator.standard_normal(n)
        centered = values - values.mean()
        scale = kernels.msi_scale(n, float(centered @ centered) / (n - 1))
        perms = rng.permutation_rows(n, rng.substream_seeds(args.seed, args.batch))

        t_numpy = time_call(kernels.null_msi_numpy, centered, perms, scale)
        if have_native:
            t_native = time_call(kernels.null_msi_native, centered, perms, scale)
            agree = np.allclose(
                kernels.null_msi_numpy(centered, perms, scale),
                kernels.null_msi_native(centered, perms, scale),
                rtol=1e-10,
            )
            flag = "" if agree else "  MISMATCH"
            print(
                f"{n:>6} {t_numpy * 1e3:>10.3f} {t_native * 1e3:>10.3f} "
                f"{t_numpy / t_native:>7.2f}x  {kernels.backend_for(n)}{flag}"
            )
        else:
            print(f"{n:>6} {t_numpy * 1e3:>10.3f} {'-':>10} {'-':>8}  numpy")


if __name__ == "__main__":
    main()
