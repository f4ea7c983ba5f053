#!/usr/bin/env python3
"""Benchmark the compiled transfer-recursion kernel against the numpy fallback.

The kernel dominates every measure evaluation (weights, moments, sweep
reports), so this is the one loop worth compiling.  Usage:

    python benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import time

import numpy as np


def load_backends():
    backends = {}
    from opuckit._kernels import _ref

    backends["python"] = _ref.log_phistar_abs
    try:
        from opuckit._kernels import _core

        backends["compiled"] = _core.log_phistar_abs
    except ImportError:
        pass
    return backends


def bench(fn, alphas, z, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(alphas, z)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = load_backends()
    print(f"available backends: {', '.join(backends)}")
    rng = np.random.default_rng(0)
    cases = [(200, 4096), (2000, 4096), (2000, 16384), (8000, 8192)]
    header = f"{'N':>6} {'grid':>7}" + "".join(f" {name:>12}" for name in backends)
    if len(backends) == 2:
        header += f" {'speedup':>9}"
    print(header)
    for N, G in cases:
        alphas = 0.7 * np.sqrt(rng.uniform(size=N)) * np.exp(
            2j * np.pi * rng.uniform(size=N)
        )
        z = np.exp(2j * np.pi * np.arange(G) / G)
        times = {name: bench(fn, alphas, z, args.repeats) for name, fn in backends.items()}
        row = f"{N:>6} {G:>7}" + "".join(f" {times[name] * 1e3:>10.1f}ms" for name in backends)
        if len(times) == 2:
            row += f" {times['python'] / times['compiled']:>8.1f}x"
        print(row)
        vals = [backends[name](alphas, z) for name in backends]
        if len(vals) == 2:
            assert float(np.max(np.abs(vals[0] - vals[1]))) < 1e-9, "backend mismatch"


if __name__ == "__main__":
    main()
