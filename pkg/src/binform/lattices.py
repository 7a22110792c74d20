"""Congruence sublattices of Z^2 attached to automorphisms.

A lattice is kept in row Hermite normal form ((p, q), (0, r)) with p, r > 0 and
0 <= q < r, so two lattices are equal exactly when their bases are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from fractions import Fraction

from . import _poly
from .autgroup import AutGroup, subgroup_decomposition
from .errors import InternalCheckError, InvalidFormError
from .forms import BinaryForm, RationalMatrix2, discriminant, hessian


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(rows, ncols):
    """Row Hermite normal form of the integer row lattice; zero rows dropped."""
    m = [list(r) for r in rows if any(r)]
    out = []
    col = 0
    while m and col < ncols:
        # combine all rows with a nonzero entry in `col` into one pivot row
        nz = [r for r in m if r[col] != 0]
        rest = [r for r in m if r[col] == 0]
        if not nz:
            col += 1
            continue
        piv = nz[0]
        for r in nz[1:]:
            g, s, t = _xgcd(piv[col], r[col])
            a, b = piv[col] // g, r[col] // g
            new_piv = [s * x + t * y for x, y in zip(piv, r)]
            reduced = [b * x - a * y for x, y in zip(piv, r)]
            piv = new_piv
            if any(reduced):
                rest.append(reduced)
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        m = [r for r in rest if any(r)]
        col += 1
    # reduce entries above pivots
    pcols = [next(j for j, x in enumerate(r) if x) for r in out]
    for i in range(len(out)):
        for k in range(i):
            j = pcols[i]
            q = out[k][j] // out[i][j]
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[i])]
    return out


@dataclass(frozen=True)
class Lattice2:
    """Full-rank sublattice of Z^2 with HNF row basis ((p, q), (0, r))."""

    basis: tuple

    @classmethod
    def from_generators(cls, vectors):
        rows = hnf(vectors, 2)
        if len(rows) != 2:
            raise InternalCheckError("generators do not span a full-rank lattice")
        return cls((tuple(rows[0]), tuple(rows[1])))

    @classmethod
    def standard(cls):
        return cls(((1, 0), (0, 1)))

    @property
    def det(self) -> int:
        return self.basis[0][0] * self.basis[1][1]

    def __contains__(self, v):
        (p, q), (_, r) = self.basis
        u, w = v
        if u % p:
            return False
        return (w - (u // p) * q) % r == 0

    def to_json(self):
        return {"basis": [list(b) for b in self.basis], "det": self.det}


def congruence_lattice(coeff_rows, modulus) -> Lattice2:
    """{(u, v) : c1 u + c2 v = 0 mod n for each (c1, c2) in coeff_rows}."""
    k = len(coeff_rows)
    if modulus == 1 or k == 0:
        return Lattice2.standard()
    rows = [
        [c[0] for c in coeff_rows] + [1, 0],
        [c[1] for c in coeff_rows] + [0, 1],
    ]
    for j in range(k):
        rows.append([modulus if i == j else 0 for i in range(k)] + [0, 0])
    red = hnf(rows, k + 2)
    kernel = [r[k:] for r in red if not any(r[:k])]
    return Lattice2.from_generators(kernel)


def intersect(L1: Lattice2, L2: Lattice2) -> Lattice2:
    rows = [list(b) + list(b) for b in L1.basis] + [list(b) + [0, 0] for b in L2.basis]
    red = hnf(rows, 4)
    return Lattice2.from_generators([r[2:] for r in red if not any(r[:2])])


def lattice_of(A: RationalMatrix2) -> Lattice2:
    """Points (u, v) of Z^2 with A (u, v)^T integral; requires |det A| = 1."""
    if abs(A.det) != 1:
        raise InvalidFormError("lattice_of needs |det A| = 1, got %s" % A.det)
    a, (a1, a2, a3, a4) = A.primitive
    return congruence_lattice([(a1, a2), (a3, a4)], a)


def fixed_lattice(G: AutGroup):
    """(Lambda, m): the points kept integral by every element, and its index."""
    L = reduce(intersect, (lattice_of(A) for A in G.elements), Lattice2.standard())
    if G.label in ("C1", "C2") and L.det != 1:
        raise InternalCheckError("m must be 1 for C1/C2 groups")
    return L, L.det


def dihedral_invariants(G: AutGroup) -> tuple:
    """(m1, m2, m3) for D4, (m1, m2, m3, m4) for D3/D6, ordered as subgroup_decomposition."""
    return tuple(lattice_of(A).det for A in subgroup_decomposition(G))


def check_order3_identity(A: RationalMatrix2) -> bool:
    if A == RationalMatrix2.identity() or A @ A @ A != RationalMatrix2.identity():
        raise InvalidFormError("matrix does not have order 3")
    return lattice_of(A) == lattice_of(A @ A)


def check_lcm_relations(G: AutGroup) -> bool:
    """m = lcm(m_i) and Lambda_i & Lambda_j = Lambda for all i != j."""
    reps = subgroup_decomposition(G)
    lats = [lattice_of(A) for A in reps]
    L, m = fixed_lattice(G)
    if m != reduce(math.lcm, (x.det for x in lats), 1):
        return False
    for i in range(len(lats)):
        for j in range(i + 1, len(lats)):
            if intersect(lats[i], lats[j]) != L:
                return False
    return True


def hooley_m(F: BinaryForm) -> Fraction:
    """sqrt(Disc F) / gcd of the Hessian covariant coefficients."""
    if F.degree != 3:
        raise InvalidFormError("hooley_m needs a cubic")
    D = discriminant(F)
    s = _poly.iroot(D, 2) if D > 0 else None
    if s is None:
        raise InvalidFormError("discriminant %d is not a positive square" % D)
    g = reduce(math.gcd, hessian(F))
    return Fraction(s, g)
