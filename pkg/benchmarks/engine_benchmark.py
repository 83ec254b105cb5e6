#!/usr/bin/env python3
"""Compare the compiled sweep kernel against the pure-Python fallback.

Runs the same searches with both kernels over a synthetic grid and reports
wall times, the speedup, and whether the results agree (they must: the two
kernels are written to take identical decisions).

Usage:
    python benchmarks/engine_benchmark.py
    python benchmarks/engine_benchmark.py --rows 25000,50000 --ks 15,30 --repeats 5
"""

import argparse
import time

from entropy_outliers import (
    COMPILED_AVAILABLE,
    SearchConfig,
    SynthSpec,
    generate,
    lsa,
)


def best_of(repeats, dataset, config):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = lsa(dataset, config)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rows", default="5000,20000", help="comma-separated n values")
    parser.add_argument("--ks", default="10,30", help="comma-separated k values")
    parser.add_argument("--attrs", type=int, default=10)
    parser.add_argument("--values", type=int, default=10)
    parser.add_argument("--classes", type=int, default=10)
    parser.add_argument("--seed", type=int, default=5)
    parser.add_argument("--repeats", type=int, default=3, help="best-of repeats per cell")
    args = parser.parse_args()

    if not COMPILED_AVAILABLE:
        print("compiled kernel not built; nothing to compare against")
        return 1

    rows = [int(v) for v in args.rows.split(",")]
    ks = [int(v) for v in args.ks.split(",")]

    header = f"{'n':>8} {'k':>4} {'sweeps':>6} {'compiled':>10} {'python':>10} {'speedup':>8}  agree"
    print(header)
    print("-" * len(header))
    for n in rows:
        dataset = generate(SynthSpec(n, args.attrs, args.values, args.classes, seed=args.seed))
        for k in ks:
            fast_t, fast = best_of(args.repeats, dataset, SearchConfig(k=k, engine="compiled"))
            slow_t, slow = best_of(args.repeats, dataset, SearchConfig(k=k, engine="python"))
            agree = (
                fast.outlier_indices == slow.outlier_indices
                and fast.objective == slow.objective
            )
            print(
                f"{n:>8} {k:>4} {fast.sweeps:>6} {fast_t:>9.3f}s {slow_t:>9.3f}s "
                f"{slow_t / fast_t:>7.1f}x  {'yes' if agree else 'NO'}"
            )
            if not agree:
                return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
