"""Rational automorphism groups of binary forms.

Every A in Aut F permutes the d projective roots of F by Moebius action, and a
Moebius map is pinned down by the images of three points. So the search
enumerates all ordered image triples of a fixed reference triple, rebuilds the
candidate matrix numerically, recognises rational entries by continued
fractions and keeps only candidates that fix F exactly.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import _poly
from .errors import InternalCheckError, InvalidFormError, PrecisionError
from .forms import BinaryForm, RationalMatrix2, act, require_analyzable

log = logging.getLogger(__name__)

DEFAULT_PRECISION = 192
MAX_PRECISION = 3072
DEFAULT_DENOMINATOR_BOUND = 10**6

LABELS = ("C1", "C2", "C3", "C4", "C6", "D1", "D2", "D3", "D4", "D6")
ODD_LABELS = frozenset({"C1", "C3", "D1", "D3"})
EVEN_LABELS = frozenset({"C2", "C4", "C6", "D2", "D4", "D6"})

I2 = RationalMatrix2(1, 0, 0, 1)
MINUS_I = RationalMatrix2(-1, 0, 0, -1)


@dataclass(frozen=True)
class AutGroup:
    elements: tuple
    label: str
    form: BinaryForm | None = None
    denominator_bound: int | None = None
    precision_bits: int | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, A):
        return A in self.elements

    def __iter__(self):
        return iter(self.elements)

    def conjugate(self, T: RationalMatrix2) -> list:
        """T^-1 G T, sorted."""
        Ti = T.inverse()
        return sort_elements(Ti @ A @ T for A in self.elements)

    def to_json(self):
        return {
            "form": list(self.form.coeffs) if self.form is not None else None,
            "label": self.label,
            "order": self.order,
            "denominator_bound": self.denominator_bound,
            "precision_bits": self.precision_bits,
            "elements": [A.to_json() for A in self.elements],
        }


def sort_elements(elems):
    return sorted(set(elems), key=lambda A: A.key())


def check_group(elements):
    """Raise InternalCheckError unless ``elements`` is a finite group of |det| = 1 matrices."""
    s = set(elements)
    if I2 not in s:
        raise InternalCheckError("group lacks the identity")
    for A in s:
        if abs(A.det) != 1:
            raise InternalCheckError("element with |det| != 1: %r" % (A,))
        if A.inverse() not in s:
            raise InternalCheckError("group not closed under inverse")
        for B in s:
            if A @ B not in s:
                raise InternalCheckError("group not closed under multiplication")


def classify(elements) -> str:
    elements = list(elements)
    n = len(elements)
    has_minus = MINUS_I in elements
    if n == 1:
        return "C1"
    if n == 2:
        return "C2" if has_minus else "D1"
    if n == 3:
        return "C3"
    if n == 4:
        return "C4" if any(A.order(4) == 4 for A in elements) else "D2"
    if n == 6:
        return "C6" if has_minus else "D3"
    if n == 8:
        return "D4"
    if n == 12:
        return "D6"
    raise InternalCheckError("group of order %d is not a finite subgroup of GL2(Q)" % n)


def make_group(elements, form=None, **meta) -> AutGroup:
    elems = sort_elements(elements)
    check_group(elems)
    return AutGroup(tuple(elems), classify(elems), form, **meta)


# -- numerical root search -------------------------------------------------


def _projective_roots(F: BinaryForm, prec: int):
    """Roots of F in P^1(C) as (z, w) pairs, deterministic order."""
    cs = _poly.strip(F.coeffs)
    at_inf = len(F.coeffs) - len(cs)
    pts = []
    with mpmath.workprec(prec):
        if len(cs) > 1:
            try:
                roots = mpmath.polyroots(cs, maxsteps=200 + 20 * len(cs), extraprec=prec)
            except mpmath.libmp.NoConvergence:
                raise PrecisionError("root finding did not converge") from None
            roots = [mpmath.mpc(r) for r in roots]
            roots.sort(key=lambda r: (r.real, r.imag))
            pts = [(r, mpmath.mpc(1)) for r in roots]
    pts += [(mpmath.mpc(1), mpmath.mpc(0))] * at_inf
    return pts


def _frame(p0, p1, p2):
    """Matrix sending e1, e2, e1+e2 to the lines of p0, p1, p2."""
    det = p0[0] * p1[1] - p1[0] * p0[1]
    l0 = (p2[0] * p1[1] - p1[0] * p2[1]) / det
    l1 = (p0[0] * p2[1] - p2[0] * p0[1]) / det
    return [[l0 * p0[0], l1 * p1[0]], [l0 * p0[1], l1 * p1[1]]]


def _mat_mul(a, b):
    return [[a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]]]


def _mat_inv(a):
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    return [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]


def _to_fraction(x: mpmath.mpf) -> Fraction:
    sign, man, exp, _ = x._mpf_
    man, exp = (-1 if sign else 1) * int(man), int(exp)
    if man == 0:
        return Fraction(0)
    return Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)


def _reconstruct(z, H, tight, loose):
    """Rational p/q (q <= H) equal to z, None if z is plainly not such, or raise if unsure."""
    im = abs(z.imag)
    if im >= loose:
        return None
    if im >= tight:
        raise PrecisionError("imaginary part %s is neither zero nor clearly nonzero" % mpmath.nstr(im, 5))
    fr = _to_fraction(z.real).limit_denominator(H)
    err = abs(z.real - mpmath.mpf(fr.numerator) / fr.denominator)
    if err < tight:
        return fr
    if err < loose:
        raise PrecisionError("ambiguous rational reconstruction (error %s)" % mpmath.nstr(err, 5))
    return None


def _candidates(F, prec, H):
    roots = _projective_roots(F, prec)
    d = len(roots)
    tight = mpmath.ldexp(1, -prec // 2)
    loose = mpmath.ldexp(1, -prec // 4)
    found = set()
    with mpmath.workprec(prec):
        ref_inv = _mat_inv(_frame(*roots[:3]))
        for i, j, k in itertools.permutations(range(d), 3):
            M = _mat_mul(_frame(roots[i], roots[j], roots[k]), ref_inv)
            flat = [M[0][0], M[0][1], M[1][0], M[1][1]]
            big = max(flat, key=abs)
            ents = []
            for z in flat:
                q = _reconstruct(z / big, H, tight, loose)
                if q is None:
                    break
                ents.append(q)
            else:
                det = ents[0] * ents[3] - ents[1] * ents[2]
                if det == 0:
                    continue
                num = _poly.iroot(abs(det.numerator), 2)
                den = _poly.iroot(det.denominator, 2)
                if num is None or den is None:
                    continue
                scale = Fraction(den, num)
                for s in (scale, -scale):
                    A = RationalMatrix2(*(s * e for e in ents))
                    if act(F, A) == F:
                        found.add(A)
    return found


def _close(F, found):
    elems = set(found)
    while True:
        new = {A @ B for A in elems for B in elems} - elems
        if not new:
            return elems
        for A in new:
            if act(F, A) != F:
                raise InternalCheckError("product of automorphisms fails to fix F")
        log.warning("closure added %d elements missed by the root search", len(new))
        elems |= new
        if len(elems) > 12:
            raise InternalCheckError("automorphism group exceeds order 12")


def compute_aut(F: BinaryForm, precision: int = DEFAULT_PRECISION,
                denominator_bound: int = DEFAULT_DENOMINATOR_BOUND,
                max_precision: int = MAX_PRECISION) -> AutGroup:
    """Aut F as a verified finite subgroup of GL2(Q).

    Completeness is conditional on every automorphism having primitive
    denominator (after normalising the largest entry to 1) at most
    ``denominator_bound``.
    """
    require_analyzable(F)
    prec = precision
    while True:
        try:
            found = _candidates(F, prec, denominator_bound)
            break
        except PrecisionError:
            if prec * 2 > max_precision:
                raise
            log.info("retrying automorphism search at %d bits", prec * 2)
            prec *= 2
    elems = _close(F, found | {I2})
    G = make_group(elems, F, denominator_bound=denominator_bound, precision_bits=prec)
    even = F.degree % 2 == 0
    if (MINUS_I in G) != even:
        raise InternalCheckError("-I membership inconsistent with degree parity")
    if G.label not in (EVEN_LABELS if even else ODD_LABELS):
        raise InternalCheckError("label %s impossible for degree %d" % (G.label, F.degree))
    return G


def rational_dth_root(a: int, b: int, d: int):
    """(A, B) coprime with a/b = (A/B)^d, or None."""
    fr = Fraction(a, b)
    if fr < 0 and d % 2 == 0:
        return None
    p = _poly.iroot(abs(fr.numerator), d)
    q = _poly.iroot(fr.denominator, d)
    if p is None or q is None:
        return None
    return (p if fr > 0 else -p), q


def binomial_aut(a: int, b: int, d: int) -> AutGroup:
    """Closed-form Aut of a x^d + b y^d.

    The antidiagonal elements are (0, B/A; A/B, 0) up to signs when
    a/b = (A/B)^d: the x^d coefficient of F(u2 y, u3 x) is b u3^d, so u3^d = a/b.
    """
    if a == 0 or b == 0 or d < 3:
        raise InvalidFormError("need a, b nonzero and d >= 3")
    signs = (1, -1) if d % 2 == 0 else (1,)
    elems = [RationalMatrix2(w1, 0, 0, w2) for w1 in signs for w2 in signs]
    root = rational_dth_root(a, b, d)
    if root is not None:
        A, B = root
        elems += [RationalMatrix2(0, w2 * Fraction(B, A), w3 * Fraction(A, B), 0)
                  for w2 in signs for w3 in signs]
    F = BinaryForm([a] + [0] * (d - 1) + [b])
    return make_group(elems, F)


def subgroup_decomposition(G: AutGroup) -> list:
    """Coset representatives of the order-2 subgroups (and the order-3 one).

    For D3 these are subgroups of Aut F itself; for D4 and D6 of Aut F / {+-I}.
    The order-3 representative, when present, is last and has order exactly 3.
    """
    if G.label not in ("D3", "D4", "D6"):
        raise InvalidFormError("subgroup decomposition needs a D3, D4 or D6 group, got %s" % G.label)
    elems = list(G.elements)
    if G.label == "D3":
        classes = [(A,) for A in elems]
    else:
        seen, classes = set(), []
        for A in elems:
            if A not in seen:
                seen |= {A, -A}
                classes.append((A, -A))

    def cls_order(c):
        # order in the quotient: smallest k with A^k in {+-I}
        A = c[0]
        P = A
        for k in range(1, 7):
            if P == I2 or (len(c) == 2 and P == MINUS_I):
                return k
            P = P @ A
        raise InternalCheckError("element of infinite order")

    invol = sorted((max(c, key=lambda M: M.key()) for c in classes if cls_order(c) == 2),
                   key=lambda M: M.key())
    expected = 3
    if len(invol) != expected:
        raise InternalCheckError("expected 3 order-2 subgroups, found %d" % len(invol))
    out = list(invol)
    if G.label in ("D3", "D6"):
        rot = [A for c in classes if cls_order(c) == 3 for A in c if A.order(3) == 3]
        if not rot:
            raise InternalCheckError("no order-3 element")
        out.append(max(rot, key=lambda M: M.key()))
    return out
