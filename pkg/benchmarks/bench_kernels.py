#!/usr/bin/env python3
"""Benchmark the numba and numpy paths of the tensor-sum kernel.

Runs the smoothing-transform tensor sum at representative grid sizes and
prints timing, speedup, and the relative agreement of the two paths.
Run with BEREZIN_NO_NUMBA=1 to confirm the dispatcher falls back cleanly.

    python3 benchmarks/bench_kernels.py [--repeats 3]
"""

import argparse
import math
import time

import numpy as np

from berezin import _kernels
from berezin.quadrature import gauss_hermite

CASES = (
    # (n, order, alpha, lam, z)
    (1, 80, 1.0, 1.0, (0.3 + 0.2j,)),
    (1, 256, 2.0, 0.5, (0.4 - 0.1j,)),
    (2, 40, 2.0, 2.0, (0.2 + 0.1j, -0.3 + 0.4j)),
    (2, 80, 1.0, 1.0, (0.3 + 0.0j, 0.1 - 0.2j)),
)


def best_of(fn, repeats):
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        value = fn()
        timings.append(time.perf_counter() - start)
    return min(timings), value


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    print(f"numba available: {_kernels.HAVE_NUMBA}   active path: "
          f"{'numba' if _kernels.USING_NUMBA else 'numpy'}")
    header = f"{'case':<24} {'nodes':>10} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8} {'rel diff':>10}"
    print(header)
    print("-" * len(header))

    for n, order, alpha, lam, z in CASES:
        rule = gauss_hermite(order)
        su = rule.nodes / math.sqrt(alpha)
        zre = np.array([c.real for c in z])
        zim = np.array([c.imag for c in z])
        args_tuple = (su, rule.weights, zre, zim, alpha, lam)

        t_numpy, v_numpy = best_of(lambda: _kernels._gauss_transform_sum_numpy(*args_tuple), args.repeats)
        if _kernels.HAVE_NUMBA:
            _kernels._gauss_transform_sum_numba(*args_tuple)  # warm the JIT once
            t_numba, v_numba = best_of(lambda: _kernels._gauss_transform_sum_numba(*args_tuple), args.repeats)
            speedup = f"{t_numpy / t_numba:7.1f}x"
            rel = abs(v_numba - v_numpy) / abs(v_numpy)
            numba_col = f"{t_numba:10.4f}"
            rel_col = f"{rel:10.2e}"
        else:
            numba_col, speedup, rel_col = f"{'n/a':>10}", f"{'n/a':>8}", f"{'n/a':>10}"
        label = f"n={n} m={order}"
        print(f"{label:<24} {order ** (2 * n):>10} {t_numpy:10.4f} {numba_col} {speedup} {rel_col}")


if __name__ == "__main__":
    main()
