#!/usr/bin/env python3
"""Benchmark the compiled enumeration kernel against the pure-Python one.

The kernels tally permutation statistics over all of S_n; this is the only
hot loop in the package (everything symbolic deals with small polynomials).

    python benchmarks/bench_enumeration.py [--max-n 9] [--kind 0|1|2]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gramcalc import _statpure  # noqa: E402

try:
    from gramcalc import _statcore
except ImportError:
    _statcore = None

KIND_NAMES = {0: "exterior_pdd", 1: "peak_dd", 2: "carlitz_quadruple"}


def time_kernel(kernel, n, kind):
    started = time.perf_counter()
    counts = kernel.count_table(n, kind)
    return time.perf_counter() - started, counts


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=9)
    parser.add_argument("--kind", type=int, default=0, choices=(0, 1, 2))
    args = parser.parse_args()

    print(f"kind: {KIND_NAMES[args.kind]}")
    if _statcore is None:
        print("compiled kernel not built (python setup.py build_ext --inplace)")
    header = f"{'n':>3} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in range(6, args.max_n + 1):
        pure_time, pure_counts = time_kernel(_statpure, n, args.kind)
        if _statcore is None:
            print(f"{n:>3} {pure_time:>10.3f} {'-':>13} {'-':>8}")
            continue
        fast_time, fast_counts = time_kernel(_statcore, n, args.kind)
        if pure_counts != fast_counts:
            raise SystemExit(f"kernels disagree at n={n}")
        speedup = pure_time / fast_time if fast_time else float("inf")
        print(f"{n:>3} {pure_time:>10.3f} {fast_time:>13.3f} {speedup:>7.1f}x")


if __name__ == "__main__":
    main()
