"""Time the numba and numpy enumeration kernels on the same boxes.

    python3 benchmarks/bench_enumerate.py [--repeat 3] [--threads N]

Both backends return candidates in row-major order, so the arrays must match
exactly; the script checks that
before reporting times. The first numba call compiles (or loads the cache) and
is excluded.
"""

import argparse
import time

import numpy as np

from binform import _kernels
from binform.counting import exact_box
from binform.forms import BinaryForm

CASES = [
    ("1 0 0 1", 10**6, 1000),
    ("1 0 0 0 1", 10**7, None),
    ("1 0 0 0 1", 10**13, None),
    ("1 0 -3 -1", 10**6, 800),
    ("2 6 15 20 15 6 2", 10**9, None),
]


def best_of(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    # warm up the jit on a tiny box
    _kernels.scan_box([1, 0, 1], 2, 2, 5, use_numba=True)

    print("%-22s %10s %12s %10s %10s %8s" % ("form", "Z", "cells", "numba s", "numpy s", "speedup"))
    for cs, z, n in CASES:
        F = BinaryForm.parse(cs)
        if n is None:
            n = exact_box(F, z).x_max
        cells = (2 * n + 1) ** 2
        t_nb, a = best_of(lambda: _kernels.scan_box(F.coeffs, n, n, z, True, args.threads), args.repeat)
        t_np, b = best_of(lambda: _kernels.scan_box(F.coeffs, n, n, z, False, args.threads), args.repeat)
        same = all(np.array_equal(u, v) for u, v in zip(a[:3], b[:3]))
        if not same:
            raise SystemExit("backends disagree on %s" % cs)
        print("%-22s %10.0e %12d %10.4f %10.4f %7.1fx" % (cs, z, cells, t_nb, t_np, t_np / t_nb))


if __name__ == "__main__":
    main()
