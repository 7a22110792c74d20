"""Counting integer points with 0 < |F(x, y)| <= Z.

N_F(Z) counts pairs, R_F(Z) counts the values h they hit. A value h is
essentially represented when all of its representations lie in one orbit of
Aut F; the pairs of such h make up n1 and the rest n2.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from functools import reduce

from . import _kernels, _poly
from .area import unit_circle_min
from .autgroup import AutGroup
from .errors import BudgetError, InternalCheckError, InvalidFormError
from .forms import BinaryForm, discriminant, evaluate, real_linear_factor

log = logging.getLogger(__name__)

# cells scanned per enumeration; about a minute of numpy work
DEFAULT_MAX_CELLS = 4 * 10**8
TRUNCATION_GAMMA = 2 / 3


@dataclass(frozen=True)
class BoxSpec:
    x_max: int
    y_max: int
    exact: bool = False

    def __post_init__(self):
        if self.x_max < 0 or self.y_max < 0:
            raise InvalidFormError("box bounds must be nonnegative")

    @property
    def cells(self) -> int:
        return (2 * self.x_max + 1) * (2 * self.y_max + 1)

    def to_json(self):
        return {"x_max": self.x_max, "y_max": self.y_max, "exact": self.exact}


def exact_radius(F: BinaryForm, Z: int) -> int | None:
    """Radius R with every solution of |F| <= Z inside max(|x|, |y|) <= R, or None.

    Needs min |F| > 0 on the unit circle, i.e. no real linear factor; then
    |F(x, y)| >= c r^d with r the Euclidean norm.
    """
    if real_linear_factor(F):
        return None
    _, c_lower = unit_circle_min(F)
    if c_lower <= 0:
        return None
    if Z <= 0:
        return 0
    r = (Z / c_lower) ** (1.0 / F.degree)
    return int(math.ceil(r * (1 + 1e-12))) + 1


def exact_box(F: BinaryForm, Z: int) -> BoxSpec:
    r = exact_radius(F, Z)
    if r is None:
        raise InvalidFormError("no exact box: the form has a real linear factor")
    return BoxSpec(r, r, True)


def default_box(F: BinaryForm, Z: int, max_cells: int = DEFAULT_MAX_CELLS) -> BoxSpec:
    """Exact box when one exists, else max(|x|, |y|) <= Z^(2/3) capped to the budget."""
    r = exact_radius(F, Z)
    if r is not None:
        return BoxSpec(r, r, True)
    n = int(math.floor(max(Z, 1) ** TRUNCATION_GAMMA))
    cap = (math.isqrt(max_cells) - 1) // 2
    if n > cap:
        log.warning("truncated box %d capped to %d by the cell budget", n, cap)
        n = cap
    return BoxSpec(n, n, False)


def box_for(F: BinaryForm, Z: int, n: int | None = None) -> BoxSpec:
    """A requested square box of radius n (or the default); flagged exact when it provably is."""
    if n is None:
        return default_box(F, Z)
    r = exact_radius(F, Z)
    return BoxSpec(n, n, r is not None and n >= r)


class RepsIndex:
    """Map h -> sorted list of (x, y) with F(x, y) = h, backed by sorted arrays."""

    def __init__(self, xs, ys, hs, z=None):
        self.z = z
        hs = list(hs)
        order = sorted(range(len(hs)), key=lambda k: (hs[k], int(xs[k]), int(ys[k])))
        self.h = [int(hs[k]) for k in order]
        self.x = [int(xs[k]) for k in order]
        self.y = [int(ys[k]) for k in order]
        for k in range(1, len(self.h)):
            if (self.h[k], self.x[k], self.y[k]) == (self.h[k - 1], self.x[k - 1], self.y[k - 1]):
                raise InternalCheckError("duplicate pair in index")
        self._groups = {}
        start = 0
        for k in range(1, len(self.h) + 1):
            if k == len(self.h) or self.h[k] != self.h[start]:
                self._groups[self.h[start]] = (start, k)
                start = k

    @classmethod
    def empty(cls, z=None):
        return cls([], [], [], z)

    def __len__(self):
        return len(self.h)

    def values(self) -> list:
        return list(self._groups)

    def reps(self, h) -> list:
        if h not in self._groups:
            return []
        a, b = self._groups[h]
        return list(zip(self.x[a:b], self.y[a:b]))

    def items(self):
        for h, (a, b) in self._groups.items():
            yield h, list(zip(self.x[a:b], self.y[a:b]))

    def pairs(self):
        return list(zip(self.h, self.x, self.y))

    def __eq__(self, other):
        return isinstance(other, RepsIndex) and self.pairs() == other.pairs()

    def check(self, F: BinaryForm, Z: int):
        for h, x, y in self.pairs():
            if evaluate(F, x, y) != h or not 0 < abs(h) <= Z:
                raise InternalCheckError("stored pair (%d, %d) does not give h = %d" % (x, y, h))


def enumerate_reps(F: BinaryForm, Z: int, box: BoxSpec, max_cells: int = DEFAULT_MAX_CELLS,
                   use_numba=None, threads=None) -> RepsIndex:
    """All pairs in the box with 0 < |F(x, y)| <= Z, grouped by h."""
    if not F.is_integral():
        raise InvalidFormError("form must have integer coefficients")
    if discriminant(F) == 0:
        raise InvalidFormError("form has zero discriminant")
    if Z < 0:
        raise InvalidFormError("Z must be nonnegative")
    if box.cells > max_cells:
        raise BudgetError("box has %d cells, budget is %d" % (box.cells, max_cells))
    if Z == 0:
        return RepsIndex.empty(Z)
    xs, ys, hs, exact = _kernels.scan_box(F.coeffs, box.x_max, box.y_max, Z,
                                          use_numba=use_numba, threads=threads)
    if not exact:
        hs = [evaluate(F, int(x), int(y)) for x, y in zip(xs, ys)]
    keep = [k for k in range(len(xs)) if hs[k] != 0 and abs(int(hs[k])) <= Z]
    return RepsIndex([xs[k] for k in keep], [ys[k] for k in keep], [hs[k] for k in keep], Z)


def enumerate_naive(F: BinaryForm, Z: int, box: BoxSpec) -> RepsIndex:
    """Plain double loop with exact integers; the reference for the kernels."""
    xs, ys, hs = [], [], []
    for x in range(-box.x_max, box.x_max + 1):
        for y in range(-box.y_max, box.y_max + 1):
            h = evaluate(F, x, y)
            if h != 0 and abs(h) <= Z:
                xs.append(x)
                ys.append(y)
                hs.append(h)
    return RepsIndex(xs, ys, hs, Z)


def _canonical(G: AutGroup, x: int, y: int):
    """Smallest integral image of (x, y) under G; identifies the orbit."""
    best = None
    for A in G.elements:
        u, v = A.apply(x, y)
        if u.denominator == 1 and v.denominator == 1:
            p = (int(u), int(v))
            if best is None or p < best:
                best = p
    if best is None:
        raise InternalCheckError("identity missing from the group")
    return best


@dataclass(frozen=True)
class HRow:
    h: int
    rep_count: int
    orbit_count: int

    @property
    def essential(self) -> bool:
        return self.orbit_count == 1


@dataclass(frozen=True)
class CountsReport:
    n_f: int
    r_f: int
    n1: int
    n2: int
    box: BoxSpec
    z: int
    truncated: bool
    rows: tuple = ()
    tail_heuristic: float | None = None

    def non_essential(self) -> list:
        return [r.h for r in self.rows if not r.essential]

    def to_json(self):
        out = {
            "n_f": self.n_f, "r_f": self.r_f, "n1": self.n1, "n2": self.n2,
            "z": self.z, "box": self.box.to_json(), "truncated": self.truncated,
            "essential_advisory": self.truncated,
            "non_essential": self.non_essential(),
        }
        if self.tail_heuristic is not None:
            out["tail_heuristic"] = "%.6g" % self.tail_heuristic
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["h", "rep_count", "orbit_count", "essential"])
        for r in self.rows:
            w.writerow([r.h, r.rep_count, r.orbit_count, str(r.essential).lower()])
        return buf.getvalue()


def tail_heuristic(d: int, Z: int, box: BoxSpec):
    """Z^(1 - (d-2) gamma) with Z^gamma the box radius; None for exact boxes."""
    if box.exact or Z <= 1:
        return None
    n = max(min(box.x_max, box.y_max), 2)
    gamma = math.log(n) / math.log(Z)
    return Z ** (1 - (d - 2) * gamma)


def counts(idx: RepsIndex, G: AutGroup, box: BoxSpec, z: int) -> CountsReport:
    rows = []
    n1 = n2 = 0
    for h, reps in idx.items():
        if len(reps) == 1:
            k = 1
        else:
            k = len({_canonical(G, x, y) for x, y in reps})
        rows.append(HRow(h, len(reps), k))
        if k == 1:
            n1 += len(reps)
        else:
            n2 += len(reps)
    n_f = len(idx)
    d = G.form.degree if G.form is not None else None
    tail = tail_heuristic(d, z, box) if d else None
    rep = CountsReport(n_f, len(rows), n1, n2, box, z, not box.exact, tuple(rows), tail)
    if rep.n_f != rep.n1 + rep.n2 or rep.r_f > rep.n_f:
        raise InternalCheckError("inconsistent counts")
    return rep


def thue_bound(h: int, d: int) -> int:
    fac = _poly.factorize(abs(h))
    tau = reduce(lambda a, e: a * (e + 1), fac.values(), 1)
    return 2800 * tau * d ** (1 + len(fac))


def thue_audit(idx: RepsIndex, d: int) -> bool:
    """Every h has at most 2800 tau(|h|) d^(1 + omega(|h|)) stored representations."""
    floor = 2800 * d  # the bound never drops below this, so factor only above it
    for h, reps in idx.items():
        if len(reps) > floor and len(reps) > thue_bound(h, d):
            return False
    return True


def count(F: BinaryForm, Z: int, G: AutGroup, box: BoxSpec | None = None,
          max_cells: int = DEFAULT_MAX_CELLS) -> CountsReport:
    box = box or default_box(F, Z, max_cells)
    idx = enumerate_reps(F, Z, box, max_cells)
    return counts(idx, G, box, Z)
