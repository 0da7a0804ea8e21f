#!/usr/bin/env python3
"""Benchmark the two census backends on the finite-field sweeps.

The numba backend runs one Gaussian elimination per form inside a compiled
loop; the numpy backend evaluates batched Pfaffian minors.  Both must return
identical tallies; this script times them side by side on the sweeps the
test suite actually uses and prints a small table.

Usage: python benchmarks/bench_oracle.py [--repeat N]
"""

import argparse
import time

import numpy as np

from pfes import _kernels
from pfes.fq_oracle import SkewFormFp

SWEEPS = [
    (2, 5, "2^10 forms"),
    (2, 6, "2^15 forms"),
    (3, 5, "3^10 forms"),
    (2, 7, "2^21 forms"),
    (3, 6, "3^15 forms"),
]


def time_backend(fn, p, n, alpha, repeat):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(p, n, alpha)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _kernels.HAVE_NUMBA:
        # trigger compilation outside the timed region
        _kernels._census_numba(2, 4, SkewFormFp.zero(2, 4).entries)

    print(f"{'sweep':<22}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for p, n, label in SWEEPS:
        alpha = SkewFormFp.standard(p, n, 1).entries
        t_np, ref = time_backend(_kernels._census_numpy, p, n, alpha, args.repeat)
        if _kernels.HAVE_NUMBA:
            t_nb, got = time_backend(_kernels._census_numba, p, n, alpha, args.repeat)
            assert (np.asarray(got) == np.asarray(ref)).all(), "backends disagree"
            ratio = f"{t_np / t_nb:8.1f}x"
            nb_text = f"{t_nb:12.3f}"
        else:
            nb_text, ratio = f"{'n/a':>12}", f"{'n/a':>10}"
        print(f"p={p} n={n} {label:<14}{nb_text}{t_np:12.3f}{ratio}")


if __name__ == "__main__":
    main()
