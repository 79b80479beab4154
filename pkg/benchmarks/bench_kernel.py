#!/usr/bin/env python3
"""Benchmark the compiled kernel against its pure-Python twin.

Times the three hot loops on representative workloads and prints a
small table with speedups.  Results are also sanity-checked for
equality between the two implementations.

Usage: python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time

from avgsat._kernel import _pure
from avgsat.formula import ConnectiveTable

try:
    from avgsat._kernel import _core
except ImportError:
    _core = None


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def workloads():
    std = ConnectiveTable.standard()
    ab = ConnectiveTable.all_binary()
    sentences = _pure.enumerate_length(2, std.arities, std.truth_bits, 9,
                                       want_masks=False)

    def eval_batch(mod):
        return sum(mod.eval_mask(codes, 2, std.arities, std.truth_bits)
                   for codes, _, _ in sentences[:5000])

    return [
        ("census N=3 (5.2M sequences)",
         lambda mod: mod.census_length(4, ab.arities, ab.truth_bits, 7, 3)),
        ("enumerate 9 tokens, 2 vars, with masks",
         lambda mod: len(mod.enumerate_length(2, std.arities, std.truth_bits, 9,
                                              alpha=2, compact=True))),
        ("evaluate 5000 sentences",
         eval_batch),
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"{'workload':<42} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for label, fn in workloads():
        t_pure, r_pure = best_of(lambda: fn(_pure), args.repeat)
        if _core is None:
            print(f"{label:<42} {t_pure * 1000:>8.1f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_core, r_core = best_of(lambda: fn(_core), args.repeat)
        assert r_pure == r_core, f"kernel mismatch on {label}"
        print(f"{label:<42} {t_pure * 1000:>8.1f}ms {t_core * 1000:>8.1f}ms "
              f"{t_pure / t_core:>7.1f}x")


if __name__ == "__main__":
    main()
