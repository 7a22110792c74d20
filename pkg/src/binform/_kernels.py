"""Box enumeration kernels for 0 < |F(x, y)| <= Z.

Each cell is screened in float64 against Z plus a rounding budget, and the
survivors are evaluated exactly. In int64 the exact value comes from
wraparound arithmetic: the result is right modulo 2^64, hence right outright
once the true value is known to be below 2^62 in size, which the float screen
guarantees when ``int64_safe`` holds. Otherwise survivors are redone with
Python integers by the caller.

Two interchangeable backends: a numba kernel parallel over x rows, and a
numpy one over blocks of rows. BINFORM_NUMBA=0 forces numpy; BINFORM_THREADS
caps the worker count of either.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

EPS = 2.0 ** -53
INT64_LIMIT = 2 ** 62

try:
    import numba
    from numba import njit, prange
    HAVE_NUMBA = True
    # an old system TBB is rejected noisily; numba falls back to another layer anyway
    warnings.filterwarnings("ignore", message="The TBB threading layer", category=numba.NumbaWarning)
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get("BINFORM_NUMBA", "1") != "0"


def thread_count() -> int:
    n = os.cpu_count() or 1
    cap = os.environ.get("BINFORM_THREADS")
    if cap:
        try:
            n = max(1, min(n, int(cap)))
        except ValueError:
            pass
    return n


def error_factor(d: int) -> float:
    # Horner in (x, y) plus the running powers of y: generous gamma_{4d+4}
    return (4 * d + 4) * EPS * 1.01


def int64_safe(coeffs, x_max: int, y_max: int, z: int) -> bool:
    """True when the int64 path gives exact values for every float survivor."""
    if any(abs(int(c)) >= INT64_LIMIT for c in coeffs) or max(x_max, y_max) >= 2 ** 31:
        return False
    d = len(coeffs) - 1
    bound = sum(abs(int(c)) for c in coeffs) * max(x_max, y_max, 1) ** d
    err = error_factor(d) * bound
    return z + 2 * err + 2 < INT64_LIMIT


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _row(cf, ca, ci, x, y_max, z, fac, out_y, out_h, fill):
        n = 0
        xf = float(x)
        for y in range(-y_max, y_max + 1):
            if x == 0 and y == 0:
                continue
            yf = float(y)
            acc = 0.0
            mag = 0.0
            yp = 1.0
            for i in range(cf.shape[0]):
                acc = acc * xf + cf[i] * yp
                mag = mag * abs(xf) + ca[i] * abs(yp)
                yp *= yf
            if abs(acc) <= z + fac * mag + 1.0:
                if fill:
                    h = np.int64(0)
                    yi = np.int64(1)
                    for i in range(ci.shape[0]):
                        h = h * x + ci[i] * yi
                        yi = yi * y
                    out_y[n] = y
                    out_h[n] = h
                n += 1
        return n

    @njit(parallel=True, cache=True)
    def _scan_numba(cf, ca, ci, x_max, y_max, z, fac):
        rows = 2 * x_max + 1
        counts = np.zeros(rows, dtype=np.int64)
        dummy_y = np.zeros(0, dtype=np.int64)
        dummy_h = np.zeros(0, dtype=np.int64)
        for r in prange(rows):
            counts[r] = _row(cf, ca, ci, r - x_max, y_max, z, fac, dummy_y, dummy_h, False)
        offs = np.zeros(rows + 1, dtype=np.int64)
        for r in range(rows):
            offs[r + 1] = offs[r] + counts[r]
        total = offs[rows]
        xs = np.empty(total, dtype=np.int64)
        ys = np.empty(total, dtype=np.int64)
        hs = np.empty(total, dtype=np.int64)
        for r in prange(rows):
            a = offs[r]
            b = offs[r + 1]
            _row(cf, ca, ci, r - x_max, y_max, z, fac, ys[a:b], hs[a:b], True)
            for k in range(a, b):
                xs[k] = r - x_max
        return xs, ys, hs


def _coeff_arrays(coeffs, exact_ints):
    cf = np.array([float(c) for c in coeffs], dtype=np.float64)
    ca = np.abs(cf)
    if exact_ints:
        ci = np.array([int(c) for c in coeffs], dtype=np.int64)
    else:
        ci = np.zeros(len(coeffs), dtype=np.int64)
    return cf, ca, ci


def _block_numpy(cf, ca, ci, x_lo, x_hi, y_max, z, fac, exact_ints):
    x = np.arange(x_lo, x_hi + 1, dtype=np.int64)[:, None]
    y = np.arange(-y_max, y_max + 1, dtype=np.int64)[None, :]
    xf, yf = x.astype(np.float64), y.astype(np.float64)
    acc = np.zeros((x.shape[0], y.shape[1]))
    mag = np.zeros_like(acc)
    yp = np.ones_like(yf)
    for c, a in zip(cf, ca):
        acc = acc * xf + c * yp
        mag = mag * np.abs(xf) + a * np.abs(yp)
        yp = yp * yf
    keep = np.abs(acc) <= z + fac * mag + 1.0
    keep &= ~((x == 0) & (y == 0))
    ii, jj = np.nonzero(keep)
    xs = x[ii, 0]
    ys = y[0, jj]
    hs = np.zeros(len(xs), dtype=np.int64)
    if exact_ints:
        with np.errstate(over="ignore"):
            yi = np.ones_like(ys)
            for c in ci:
                hs = hs * xs + c * yi
                yi = yi * ys
    return xs, ys, hs


def _scan_numpy(cf, ca, ci, x_max, y_max, z, fac, exact_ints, threads):
    # rows per block keeps each temporary around a few million cells
    per = max(1, 4_000_000 // (2 * y_max + 1))
    starts = list(range(-x_max, x_max + 1, per))
    jobs = [(s, min(s + per - 1, x_max)) for s in starts]

    def run(job):
        return _block_numpy(cf, ca, ci, job[0], job[1], y_max, z, fac, exact_ints)

    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    if not parts:
        e = np.zeros(0, dtype=np.int64)
        return e, e, e
    return tuple(np.concatenate([p[k] for p in parts]) for k in range(3))


def scan_box(coeffs, x_max: int, y_max: int, z: int, use_numba=None, threads=None):
    """Candidate cells of the box |x| <= x_max, |y| <= y_max.

    Returns (xs, ys, hs, exact): hs holds F(x, y) exactly when ``exact``;
    otherwise the caller must recompute it. Candidates may include cells with
    F = 0 or |F| slightly above Z; every true solution is among them.
    Row-major order, independent of the schedule.
    """
    d = len(coeffs) - 1
    exact_ints = int64_safe(coeffs, x_max, y_max, z)
    cf, ca, ci = _coeff_arrays(coeffs, exact_ints)
    fac = error_factor(d)
    zf = float(z)
    if use_numba is None:
        use_numba = numba_enabled()
    threads = threads or thread_count()
    if use_numba and HAVE_NUMBA:
        numba.set_num_threads(max(1, min(threads, numba.config.NUMBA_NUM_THREADS)))
        xs, ys, hs = _scan_numba(cf, ca, ci, x_max, y_max, zf, fac)
    else:
        xs, ys, hs = _scan_numpy(cf, ca, ci, x_max, y_max, zf, fac, exact_ints, threads)
    return xs, ys, hs, exact_ints
