"""Area of the region |F(x, y)| <= 1.

In polar coordinates the region is r^d |F(cos t, sin t)| <= 1, so

    A_F = 1/2 * int_0^{2 pi} |F(cos t, sin t)|^(-2/d) dt
        =       int_0^{pi}   |F(cos t, sin t)|^(-2/d) dt

(|F| has period pi). The integrand blows up like |t - t_j|^(-2/d) at the
directions of real linear factors; for d >= 3 that exponent is below 1, and
tanh-sinh quadrature on pieces split at those directions converges rapidly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import _poly
from .errors import InvalidFormError, QuadratureError
from .forms import BinaryForm, require_analyzable

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_DPS = 64


@dataclass(frozen=True)
class AreaEstimate:
    value: mpmath.mpf
    abs_error_bound: mpmath.mpf
    method: str
    singular_angles: list = field(default_factory=list)

    def __float__(self):
        return float(self.value)

    def to_json(self, digits=20):
        return {
            "a_f": mpmath.nstr(self.value, digits),
            "a_f_error_bound": mpmath.nstr(self.abs_error_bound, 3),
            "method": self.method,
            "singular_angles": [mpmath.nstr(t, digits) for t in self.singular_angles],
        }


def singular_angles(F: BinaryForm, dps: int = DEFAULT_DPS) -> list:
    """Angles in [0, pi) where F(cos t, sin t) vanishes, sorted."""
    prec = int(dps * 3.33) + 10
    cs = _poly.strip(F.coeffs)
    out = []
    with mpmath.workprec(prec):
        for lo, hi in _poly.isolate_real_roots(cs):
            alpha = _poly.refine_root(cs, lo, hi, prec)
            # direction (alpha, 1)
            t = mpmath.acot(alpha) if alpha != 0 else mpmath.pi / 2
            out.append(t + mpmath.pi if t < 0 else t)
        if F.coeffs[0] == 0:
            # F(1, 0) = 0: the direction of the x-axis
            out.append(mpmath.mpf(0))
    return sorted(out)


def _integrand(F: BinaryForm):
    d = F.degree
    cs = [mpmath.mpf(c) for c in F.coeffs]
    expo = mpmath.mpf(-2) / d

    def g(t):
        c, s = mpmath.cos(t), mpmath.sin(t)
        # homogeneous Horner: acc_k = acc_{k-1} * c + coef_k * s^k
        acc = mpmath.mpf(0)
        sp = mpmath.mpf(1)
        for coef in cs:
            acc = acc * c + coef * sp
            sp *= s
        if acc == 0:
            return mpmath.inf
        return abs(acc) ** expo

    return g


def _merge_points(grid, angles, gap=1e-3):
    """Breakpoints on [0, pi]: the ends, every singular angle, and the grid points clear of them."""
    inner = [g for g in grid[1:-1] if all(abs(g - t) > gap for t in angles)]
    return sorted(set([mpmath.mpf(0), +mpmath.pi] + list(angles) + inner))


def a_f_quadrature(F: BinaryForm, tol: float = DEFAULT_TOL, dps: int = DEFAULT_DPS,
                   max_degree: int = 10) -> AreaEstimate:
    require_analyzable(F)
    if tol <= 0:
        raise InvalidFormError("tol must be positive")
    with mpmath.workdps(dps):
        angles = singular_angles(F, dps)
        # extra uniform breakpoints keep sharp peaks of the integrand resolved
        grid = [mpmath.pi * k / (2 * F.degree) for k in range(2 * F.degree + 1)]
        pts = _merge_points(grid, angles)
        g = _integrand(F)
        value = err = None
        for degree in range(4, max_degree + 1):
            total = mpmath.mpf(0)
            total_err = mpmath.mpf(0)
            for a, b in zip(pts, pts[1:]):
                v, e = mpmath.quad(g, [a, b], method="tanh-sinh", error=True, maxdegree=degree)
                total += v
                total_err += e
            value, err = total, total_err
            if err <= tol:
                return AreaEstimate(+value, +err, "quadrature", angles)
            log.debug("degree %d: error %s > tol", degree, mpmath.nstr(err, 3))
    raise QuadratureError("tolerance %g not reached (error %s)" % (tol, mpmath.nstr(err, 3)),
                          estimate=value, error=err)


def gamma(x):
    return mpmath.gamma(x)


def a_f_closed_cubic(delta: int, dps: int = DEFAULT_DPS) -> AreaEstimate:
    """A_F of a cubic from its discriminant alone."""
    if delta == 0:
        raise InvalidFormError("zero discriminant")
    with mpmath.workdps(dps + 10):
        base = gamma(mpmath.mpf(1) / 3) ** 2 / gamma(mpmath.mpf(2) / 3)
        k = 3 if delta > 0 else mpmath.sqrt(3)
        v = k * base / mpmath.root(abs(delta), 6)
    return AreaEstimate(v, mpmath.mpf(0), "closed_cubic", [])


def a_f_closed_binomial(a: int, b: int, d: int, dps: int = DEFAULT_DPS) -> AreaEstimate:
    """A_F of a x^d + b y^d via Gamma functions."""
    if a == 0 or b == 0 or d < 3:
        raise InvalidFormError("need a, b nonzero and d >= 3")
    with mpmath.workdps(dps + 10):
        G = gamma
        one = mpmath.mpf(1)
        scale = d * mpmath.root(abs(a * b), d)
        if d % 2:
            v = (2 * G(1 - 2 * one / d) * G(one / d) / G(1 - one / d)
                 + G(one / d) ** 2 / G(2 * one / d)) / scale
        elif a * b > 0:
            v = 2 * G(one / d) ** 2 / G(2 * one / d) / scale
        else:
            v = 4 * G(one / d) * G(1 - 2 * one / d) / G(1 - one / d) / scale
    return AreaEstimate(v, mpmath.mpf(0), "closed_binomial", [])


def unit_circle_min(F: BinaryForm, samples: int = 4096):
    """(estimate, lower_bound) for min |F| on the unit circle.

    The lower bound is rigorous up to float rounding, which is budgeted: the
    angular derivative of F(cos t, sin t) is at most d * sum|c_i|, so the
    minimum cannot undercut the sampled minimum by more than that times half
    the sample spacing.
    """
    d = F.degree
    cs = np.array([float(c) for c in F.coeffs])
    L = d * float(np.abs(cs).sum())
    rounding = 4 * (d + 1) * np.finfo(float).eps * float(np.abs(cs).sum())
    n = max(samples, 64 * d)
    while True:
        t = np.linspace(0.0, np.pi, n, endpoint=False)
        c, s = np.cos(t), np.sin(t)
        vals = np.zeros_like(t)
        for i, coef in enumerate(cs):
            vals += coef * c ** (d - i) * s ** i
        vals = np.abs(vals)
        k = int(np.argmin(vals))
        est = float(vals[k])
        lower = est - L * (np.pi / n) / 2 - rounding
        if lower > 0.99 * est or n >= 1 << 24:
            break
        n *= 4
    # refine the estimate locally (does not affect the bound)
    with mpmath.workdps(30):
        def f(x):
            cc, ss = mpmath.cos(x), mpmath.sin(x)
            return abs(sum(float(cf) * cc ** (d - i) * ss ** i for i, cf in enumerate(F.coeffs)))
        h = np.pi / n
        a, b = t[k] - h, t[k] + h
        for _ in range(80):
            m1, m2 = a + (b - a) / 3, b - (b - a) / 3
            if f(m1) < f(m2):
                b = m2
            else:
                a = m1
        est = min(est, float(f((a + b) / 2)))
    return est, max(lower, 0.0)
