#!/usr/bin/env python3
"""Benchmark the compiled point-counting kernel against the pure-Python twin.

The exhaustive curve census is the only hot loop in the package: counting is
O(p^2) per curve and the trace-set census touches every coefficient tuple.
Everything else (scans to 10^4, certificates) is microseconds.

Usage: python3 benchmarks/bench_point_count.py [--pmax 13]
"""

import argparse
import time

from nonelliptic import _counting_py

try:
    from nonelliptic import _counting_fast
except ImportError:
    _counting_fast = None

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23]


def time_call(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_counts(backend, pmax):
    # one full count per curve over a fixed sample of curves
    total = 0.0
    for p in [q for q in PRIMES if q <= pmax]:
        elapsed, _ = time_call(backend.count_affine, p, 1, 2, 3, 0, 1)
        total += elapsed
    return total


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pmax", type=int, default=13,
                        help="largest prime for the trace-set census (default 13)")
    args = parser.parse_args()

    backends = [("pure", _counting_py)]
    if _counting_fast is not None:
        backends.append(("cython", _counting_fast))
    else:
        print("compiled kernel not built; timing the pure backend only\n")

    print(f"{'kernel':8} {'p':>4} {'trace_set census':>18} {'traces':>8}")
    rows = {}
    for name, backend in backends:
        for p in [q for q in PRIMES if q <= args.pmax]:
            elapsed, traces = time_call(backend.trace_set_range, p, p, 0, p)
            rows[(name, p)] = (elapsed, traces)
            print(f"{name:8} {p:>4} {elapsed:>16.4f}s {len(traces):>8}")

    if _counting_fast is not None:
        print("\nspeedup (pure / cython):")
        for p in [q for q in PRIMES if q <= args.pmax]:
            pure_t, pure_s = rows[("pure", p)]
            fast_t, fast_s = rows[("cython", p)]
            assert pure_s == fast_s, f"backends disagree at p={p}"
            print(f"  p={p:>2}: {pure_t / fast_t:>7.1f}x")
        print("\nbackends agree on every census above.")


if __name__ == "__main__":
    main()
