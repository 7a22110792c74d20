"""Leading constant C_F = W_F A_F and an empirical ladder in Z.

R_F(Z) ~ C_F Z^(2/d). The ladder counts R_F exactly (on exact boxes) or in
a truncated box, and reports ratio and residual against the prediction.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from . import counting
from .area import DEFAULT_DPS, DEFAULT_TOL, AreaEstimate, a_f_quadrature
from .autgroup import (DEFAULT_DENOMINATOR_BOUND, DEFAULT_PRECISION, AutGroup,
                       compute_aut)
from .errors import BudgetError, InternalCheckError
from .forms import BinaryForm, Exponent, beta_exponent, require_analyzable
from .lattices import check_lcm_relations, dihedral_invariants, fixed_lattice
from .weights import WeightInput, w_f

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Prediction:
    form: BinaryForm
    c_f: mpmath.mpf
    w_f: Fraction
    a_f: AreaEstimate
    beta: Exponent
    label: str
    m: int
    ms: tuple
    group: AutGroup = field(repr=False, default=None)

    def to_json(self, digits=20):
        d = self.form.degree
        return {
            "form": list(self.form.coeffs),
            "degree": d,
            "label": self.label,
            "order": self.group.order if self.group else None,
            "elements": [A.to_json() for A in self.group.elements] if self.group else [],
            "m": self.m,
            "m_i": list(self.ms),
            "w_f": str(self.w_f),
            "a_f": mpmath.nstr(self.a_f.value, digits),
            "a_f_error_bound": mpmath.nstr(self.a_f.abs_error_bound, 3),
            "c_f": mpmath.nstr(self.c_f, digits),
            "beta": {"exact": self.beta.text, "decimal": self.beta.decimal},
            "main_exponent": str(Fraction(2, d)),
        }


def weight_input(G: AutGroup) -> WeightInput:
    _, m = fixed_lattice(G)
    ms = ()
    if G.label in ("D3", "D4", "D6"):
        if not check_lcm_relations(G):
            raise InternalCheckError("lattice lcm/intersection relations fail for %s" % G.label)
        ms = dihedral_invariants(G)
    return WeightInput(G.label, m, ms)


def predict(F: BinaryForm, tol: float = DEFAULT_TOL, precision: int = DEFAULT_PRECISION,
            denominator_bound: int = DEFAULT_DENOMINATOR_BOUND) -> Prediction:
    require_analyzable(F)
    G = compute_aut(F, precision=precision, denominator_bound=denominator_bound)
    inp = weight_input(G)
    w = w_f(inp)
    area = a_f_quadrature(F, tol=tol)
    beta = beta_exponent(F)
    if not beta.value < 2 / F.degree:
        raise InternalCheckError("error exponent %s does not beat 2/d" % beta.text)
    with mpmath.workdps(DEFAULT_DPS):
        c = mpmath.mpf(w.numerator) * area.value / w.denominator
    return Prediction(F, c, w, area, beta, G.label, inp.m, inp.ms, G)


@dataclass(frozen=True)
class LadderRow:
    z: int
    r_f: int
    n_f: int
    ratio: float
    residual: float
    truncated: bool

    def to_json(self):
        return {"z": self.z, "r_f": self.r_f, "n_f": self.n_f, "ratio": "%.10g" % self.ratio,
                "residual": "%.10g" % self.residual, "truncated": self.truncated}


@dataclass(frozen=True)
class LadderReport:
    prediction: Prediction
    rows: tuple
    slope: float | None
    complete: bool
    stopped_at: int | None = None

    def to_json(self):
        return {
            "prediction": self.prediction.to_json(),
            "rows": [r.to_json() for r in self.rows],
            "residual_slope": None if self.slope is None else "%.6g" % self.slope,
            "beta": self.prediction.beta.decimal,
            "complete": self.complete,
            "stopped_at": self.stopped_at,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["z", "r_f", "n_f", "ratio", "residual", "truncated"])
        for r in self.rows:
            w.writerow([r.z, r.r_f, r.n_f, "%.10g" % r.ratio, "%.10g" % r.residual,
                        str(r.truncated).lower()])
        return buf.getvalue()


def residual_slope(rows) -> float | None:
    """Least-squares slope of log|residual| against log Z; None with fewer than two usable rows."""
    pts = [(math.log(r.z), math.log(abs(r.residual))) for r in rows if r.residual != 0 and r.z > 1]
    if len(pts) < 2:
        return None
    x, y = np.array(pts).T
    return float(np.polyfit(x, y, 1)[0])


def ladder(F: BinaryForm, zs, prediction: Prediction | None = None, box: int | None = None,
           max_cells: int = counting.DEFAULT_MAX_CELLS) -> LadderReport:
    zs = list(zs)
    if any(b <= a for a, b in zip(zs, zs[1:])) or any(z < 1 for z in zs):
        raise ValueError("zs must be positive and strictly increasing")
    pred = prediction or predict(F)
    c = float(pred.c_f)
    d = F.degree
    rows = []
    stopped = None
    for z in zs:
        try:
            spec = counting.box_for(F, z, box) if box is not None else counting.default_box(F, z, max_cells)
            rep = counting.count(F, z, pred.group, spec, max_cells)
        except BudgetError as exc:
            log.warning("ladder stopped at Z = %d: %s", z, exc)
            stopped = z
            break
        main = c * z ** (2 / d)
        rows.append(LadderRow(z, rep.r_f, rep.n_f, rep.r_f / main, rep.r_f - main, rep.truncated))
    return LadderReport(pred, tuple(rows), residual_slope(rows), stopped is None, stopped)
