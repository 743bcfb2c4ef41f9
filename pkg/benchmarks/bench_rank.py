#!/usr/bin/env python3
"""Benchmark the compiled Bareiss rank kernel against the pure fallback.

Two workloads drive the comparison: single ranks of random weight-sized
matrices, and the all-subsets rank table that dominates the component and
visibility scans.  Run after an editable install:

    python benchmarks/bench_rank.py [--seed N] [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from moment_fiber import _elim

try:
    from moment_fiber import _fastrank
except ImportError:
    _fastrank = None


def random_matrix(rng: random.Random, n: int, r: int, bound: int = 5):
    return [[rng.randint(-bound, bound) for _ in range(r)] for _ in range(n)]


def bench_single(rank_fn, matrices, repeat: int) -> float:
    t0 = time.perf_counter()
    for _ in range(repeat):
        for m in matrices:
            rank_fn(m)
    return (time.perf_counter() - t0) / (repeat * len(matrices))


def bench_subset_table(rank_fn, matrices) -> float:
    t0 = time.perf_counter()
    for m in matrices:
        n = len(m)
        for mask in range(1 << n):
            rank_fn([m[i] for i in range(n) if mask >> i & 1])
    return time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=20260810)
    ap.add_argument("--repeat", type=int, default=50)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    singles = [random_matrix(rng, 10, 6) for _ in range(200)]
    tables = [random_matrix(rng, 10, 6) for _ in range(20)]

    kernels = [("pure python", _elim.rank_rows)]
    if _fastrank is not None:
        kernels.append(("compiled", _fastrank.rank))
    else:
        print("compiled kernel not available; benchmarking pure only")

    results = {}
    for name, fn in kernels:
        per_call = bench_single(fn, singles, args.repeat)
        table_total = bench_subset_table(fn, tables)
        results[name] = (per_call, table_total)
        print(
            f"{name:12s}  single 10x6 rank: {per_call * 1e6:8.2f} us/call"
            f"   subset table (20 x 2^10): {table_total:6.3f} s"
        )

    if len(results) == 2:
        pure = results["pure python"]
        fast = results["compiled"]
        print(
            f"speedup: single {pure[0] / fast[0]:.1f}x,"
            f" subset table {pure[1] / fast[1]:.1f}x"
        )
        # Both kernels must agree exactly on everything they both handle.
        rng = random.Random(args.seed + 1)
        for _ in range(2000):
            m = random_matrix(rng, rng.randint(0, 9) + 1, rng.randint(1, 6))
            assert _elim.rank_rows(m) == _fastrank.rank(m)
        print("agreement check: 2000 random matrices, identical ranks")


if __name__ == "__main__":
    main()
