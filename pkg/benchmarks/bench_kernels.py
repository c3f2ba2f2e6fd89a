"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the three hot paths -- curve evaluation, adaptive gap quadrature and
the cumulative log-odds fold -- through both backends and prints a small
table.  Usage: ``python benchmarks/bench_kernels.py [--repeat N]``.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from seqscreen import _kernels_py

try:
    from seqscreen import _kernels
except ImportError:
    _kernels = None


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _bench_curves(mod, grid):
    def run():
        mod.ppv_values(0.8, 0.95, grid)
        mod.npv_values(0.8, 0.95, grid)

    return run


def _bench_quadrature(mod, tests):
    def run():
        for se, sp, phi_i in tests:
            mod.gap_integral(se, sp, 0.0, phi_i, 1, 1e-10)
            mod.gap_integral(se, sp, phi_i, 1.0, -1, 1e-10)

    return run


def _bench_fold(mod, llr):
    def run():
        mod.cumulative_log_odds(-4.59511985013459, llr)

    return run


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(7)
    grid = np.linspace(0.0, 1.0, 1_000_000)
    quad_tests = []
    for _ in range(50):
        se = rng.uniform(0.55, 0.99)
        sp = rng.uniform(0.55, 0.99)
        quad_tests.append((se, sp, 0.3 + 0.4 * rng.random()))
    llr = rng.normal(0.0, 1.0, 100_000)

    cases = [
        ("curve eval (1e6 points)", _bench_curves, (grid,)),
        ("gap quadrature (50 tests)", _bench_quadrature, (quad_tests,)),
        ("log-odds fold (1e5 steps)", _bench_fold, (llr,)),
    ]

    print(f"{'kernel':<28} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, factory, extra in cases:
        t_py = _time(factory(_kernels_py, *extra), args.repeat)
        if _kernels is None:
            print(f"{name:<28} {t_py * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
            continue
        t_c = _time(factory(_kernels, *extra), args.repeat)
        print(
            f"{name:<28} {t_py * 1e3:>8.2f}ms {t_c * 1e3:>8.2f}ms "
            f"{t_py / t_c:>7.1f}x"
        )
    if _kernels is None:
        print("\ncompiled extension not built; showing fallback timings only")


if __name__ == "__main__":
    main()
