#!/usr/bin/env python3
"""Benchmark the compiled merge kernel against the pure-Python twin.

Runs the random multi-node merge at several sentence lengths, verifies
both kernels return identical values, and prints per-tree timings plus
the speedup.  Usage:

    python3 benchmarks/bench_kernels.py [--tokens N]
"""
import argparse
import time

from opennodes import _kernels_py
from opennodes.generate import MULTI_ID
from opennodes.rng import GenSeed

try:
    from opennodes import _kernels
except ImportError:
    _kernels = None

LENGTHS = (10, 25, 50, 100)


def bench(kernel, length, tokens, seed):
    start = time.perf_counter()
    acc = 0.0
    for token in range(tokens):
        theta, h = kernel.multi_theta_entropy(
            length, seed.stream_seed(MULTI_ID, length, token), 1, 4)
        acc += theta + h
    return time.perf_counter() - start, acc


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tokens", type=int, default=2000,
                        help="trees per length (default 2000)")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()
    seed = GenSeed(args.seed)

    if _kernels is None:
        print("compiled kernel not built; benchmarking pure Python only")
    print(f"{'length':>7} {'python us/tree':>15} {'cython us/tree':>15} {'speedup':>8}")
    for length in LENGTHS:
        t_py, acc_py = bench(_kernels_py, length, args.tokens, seed)
        us_py = 1e6 * t_py / args.tokens
        if _kernels is None:
            print(f"{length:>7} {us_py:>15.2f} {'-':>15} {'-':>8}")
            continue
        t_cy, acc_cy = bench(_kernels, length, args.tokens, seed)
        if acc_cy != acc_py:
            raise SystemExit(f"kernel mismatch at length {length}: "
                             f"{acc_py!r} vs {acc_cy!r}")
        us_cy = 1e6 * t_cy / args.tokens
        print(f"{length:>7} {us_py:>15.2f} {us_cy:>15.2f} {t_py / t_cy:>7.1f}x")
    if _kernels is not None:
        print("checksums identical across kernels")


if __name__ == "__main__":
    main()
