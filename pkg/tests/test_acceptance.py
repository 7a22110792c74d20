"""Acceptance criteria, each at its stated tolerance.

Run with pytest (a summary line per criterion is printed at the end) or
directly: ``python3 tests/test_acceptance.py``.
"""

import functools
import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from binform.area import a_f_closed_binomial, a_f_closed_cubic, a_f_quadrature
from binform.asymptotics import ladder, weight_input
from binform.autgroup import binomial_aut, compute_aut, make_group
from binform.counting import (BoxSpec, count, enumerate_naive, enumerate_reps, exact_box,
                              thue_audit)
from binform.forms import BinaryForm, RationalMatrix2, act, discriminant
from binform.lattices import (check_lcm_relations, check_order3_identity, fixed_lattice,
                              hooley_m, lattice_of)
from binform.weights import w_f

F_ = BinaryForm.parse
SEED = 20240611


def rand_matrix(rng, lo=-6, hi=6, max_det=None):
    while True:
        t = [rng.randint(lo, hi) for _ in range(4)]
        det = t[0] * t[3] - t[1] * t[2]
        if det and (max_det is None or abs(det) <= max_det):
            return RationalMatrix2(*t)


def primitive(F):
    g = functools.reduce(math.gcd, F.coeffs)
    return BinaryForm([c // g for c in F.coeffs])


# -- 1 ---------------------------------------------------------------------

def criterion_1():
    cases = [("1 0 0 1", None), ("1 0 0 2", None), ("1 0 -3 -1", None), ("1 0 -12 -8", None),
             ("1 0 0 0 1", (1, 1, 4)), ("1 0 0 0 -2", (1, -2, 4))]
    worst_err, worst_t = 0.0, 0.0
    for cs, binom in cases:
        F = F_(cs)
        t0 = time.perf_counter()
        est = a_f_quadrature(F, tol=1e-10)
        dt = time.perf_counter() - t0
        ref = a_f_closed_binomial(*binom) if binom else a_f_closed_cubic(discriminant(F))
        worst_err = max(worst_err, float(abs(est.value - ref.value) / ref.value))
        worst_t = max(worst_t, dt)
    ok = worst_err < 1e-8 and worst_t < 2.0
    return ok, "max rel err %.2e, max time %.3fs" % (worst_err, worst_t)


# -- 2 ---------------------------------------------------------------------

def criterion_2():
    rng = random.Random(SEED)
    failures = []
    checked = 0
    for i in range(30):
        d = 3 + i % 6
        a = rng.choice([x for x in range(-64, 65) if x])
        b = rng.choice([x for x in range(-64, 65) if x])
        if i % 5 == 0:
            # make a/b a d-th power now and then so the dihedral case shows up
            A, B = rng.randint(1, 2), rng.randint(1, 2)
            a, b = A**d * rng.choice([1, -1] if d % 2 else [1]), B**d
        F = BinaryForm([a] + [0] * (d - 1) + [b])
        G = compute_aut(F)
        checked += G.order
        if G.elements != binomial_aut(a, b, d).elements or any(act(F, X) != F for X in G):
            failures.append(("binomial", a, b, d))
    for a, b, k in [(1, 1, 2), (1, 3, 2), (2, -3, 2), (1, 1, 4), (3, 5, 4)]:
        F = BinaryForm([a] + [0] * (k - 1) + [b] + [0] * (k - 1) + [a])
        G = compute_aut(F)
        checked += G.order
        if G.label != "D4" or G.order != 8 or any(act(F, X) != F for X in G):
            failures.append(("family", a, b, k, G.label))
    bases = ["1 0 0 1", "1 0 -3 -1", "0 1 1 0", "1 0 0 0 16", "1 0 1 0 1", "1 1 3 -1 1",
             "1 0 0 2", "2 6 15 20 15 6 2", "1 0 0 0 2", "1 1 -5 -5 5 5 1"]
    for j in range(20):
        F = F_(bases[j % len(bases)])
        T = rand_matrix(rng, -5, 5, max_det=20)
        FT = act(F, T)
        H = compute_aut(FT)
        checked += H.order
        if list(H.elements) != compute_aut(F).conjugate(T) or any(act(FT, X) != FT for X in H):
            failures.append(("conjugate", F.coeffs, T))
    return not failures, "%d elements verified exactly, failures: %s" % (
        checked, failures[:3] or "none")


# -- 3 ---------------------------------------------------------------------

def index_oracle(A):
    a = A.primitive[0]
    hits = sum(1 for u, v in itertools.product(range(a), repeat=2)
               if all(w.denominator == 1 for w in A.apply(u, v)))
    return a * a // hits


def criterion_3():
    rng = random.Random(SEED + 3)
    unimodular = [(0, 1, -1, -1), (0, 1, 1, 0), (1, 1, 0, 1), (2, 1, 1, 1), (0, -1, 1, 0),
                  (1, 0, 3, -1), (1, 2, 1, 3), (-1, 0, 0, 1)]
    bad = 0
    for _ in range(100):
        T = rand_matrix(rng, -6, 6)
        A = T.inverse() @ RationalMatrix2(*rng.choice(unimodular)) @ T
        if not (lattice_of(A).det == A.primitive[0] == index_oracle(A)):
            bad += 1
    gen = RationalMatrix2(0, 1, -1, -1)
    for _ in range(50):
        T = rand_matrix(rng, -7, 7, max_det=50)
        if not check_order3_identity(T.inverse() @ gen @ T):
            bad += 1
    groups = [compute_aut(F_(cs)) for cs in ("0 1 1 0", "1 0 0 0 1", "1 0 0 0 16")]
    for i in range(20):
        G = groups[i % 3]
        H = make_group(G.conjugate(rand_matrix(rng, -6, 6)))
        if not check_lcm_relations(H):
            bad += 1
    return bad == 0, "170 checks, %d failures" % bad


# -- 4 ---------------------------------------------------------------------

W_SPOTS = [("1 0 0 1", Fraction(1, 2)), ("1 0 0 8", Fraction(3, 4)),
           ("1 0 -3 -1", Fraction(1, 3)), ("1 0 -12 -8", Fraction(2, 3)),
           ("1 0 0 0 1", Fraction(1, 8)), ("1 0 0 0 16", Fraction(3, 16)),
           ("1 0 1 0 1", Fraction(1, 8))]


def criterion_4():
    got = [(cs, w_f(weight_input(compute_aut(F_(cs))))) for cs, _ in W_SPOTS]
    wrong = [(cs, str(g)) for (cs, g), (_, w) in zip(got, W_SPOTS) if g != w]
    return not wrong, "%d spot values, mismatches %s" % (len(W_SPOTS), wrong or "none")


# -- 5 ---------------------------------------------------------------------

def criterion_5():
    rng = random.Random(SEED + 5)
    pairs = []
    for cs in ("1 0 -3 -1", "1 0 -12 -8"):
        F = F_(cs)
        pairs.append((cs, hooley_m(F), fixed_lattice(compute_aut(F))[1]))
    expect_first = [p[1:] for p in pairs] == [(1, 1), (2, 2)]
    bases = ["1 0 -3 -1", "1 1 -2 -1", "2 1 -5 -2", "1 0 -12 -8"]
    for i in range(10):
        F = primitive(act(F_(bases[i % 4]), rand_matrix(rng, -5, 5)))
        G = compute_aut(F)
        pairs.append((F.coeffs, hooley_m(F), fixed_lattice(G)[1] if G.label == "C3" else None))
    bad = [p for p in pairs if p[1] != p[2]]
    return expect_first and not bad, "%d forms, m values %s, mismatches %s" % (
        len(pairs), sorted({int(p[2]) for p in pairs}), bad or "none")


# -- 6 ---------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def oracle_runs():
    rng = random.Random(SEED + 6)
    runs = []
    while len(runs) < 25:
        d = rng.randint(3, 6)
        cs = [rng.randint(-9, 9) for _ in range(d + 1)]
        if not any(cs) or discriminant(BinaryForm(cs)) == 0:
            continue
        F = BinaryForm(cs)
        box = BoxSpec(rng.randint(20, 200), rng.randint(20, 200))
        Z = rng.choice([10**3, 10**4, 10**5, 10**6])
        runs.append((F, Z, box, enumerate_reps(F, Z, box), enumerate_naive(F, Z, box)))
    return runs


def criterion_6():
    runs = oracle_runs()
    bad = [(F.coeffs, box) for F, Z, box, fast, slow in runs if fast != slow]
    total = sum(len(fast) for *_, fast, _ in runs)
    return not bad, "25 forms, %d stored pairs, %d mismatches" % (total, len(bad))


# -- 7 ---------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def taxicab_run():
    F = F_("1 0 0 1")
    box = BoxSpec(300, 300)
    idx = enumerate_reps(F, 2000, box)
    from binform.counting import counts
    return idx, counts(idx, compute_aut(F), box, 2000)


def criterion_7():
    _, rep = taxicab_run()
    bad = rep.non_essential()
    ok = bad == [-1729, 1729] and rep.n2 == 8
    return ok, "non-essential h: %d values (first %s), n2 = %d" % (len(bad), bad[:6], rep.n2)


# -- 8 and 10 ----------------------------------------------------------------

LADDER = [10**4, 10**5, 10**6, 10**7]


@functools.lru_cache(maxsize=None)
def ladder_run(cs):
    return ladder(F_(cs), LADDER)


def criterion_8():
    details, ok = [], True
    for cs, c_ref in (("1 0 0 0 1", 0.463519), ("1 0 0 0 16", 0.347639)):
        rep = ladder_run(cs)
        first, last = rep.rows[0].ratio, rep.rows[-1].ratio
        good = (rep.complete and all(not r.truncated for r in rep.rows)
                and abs(float(rep.prediction.c_f) - c_ref) < 5e-6
                and 0.85 <= last <= 1.15 and abs(last - 1) < abs(first - 1))
        ok &= good
        details.append("%s ratios %s" % (cs, ", ".join("%.4f" % r.ratio for r in rep.rows)))
    return ok, "; ".join(details)


@functools.lru_cache(maxsize=None)
def mahler_runs():
    F = F_("1 0 0 0 1")
    G = compute_aut(F)
    out = {}
    for Z in (10**4, 10**7):
        out[Z] = count(F, Z, G, exact_box(F, Z))
    return out


def criterion_10():
    runs = mahler_runs()
    a_f = 3.70815
    lo, hi = (runs[Z].n_f / math.sqrt(Z) for Z in (10**4, 10**7))
    ok = abs(hi / a_f - 1) < 0.05 and abs(hi - a_f) < abs(lo - a_f)
    return ok, "N_F/Z^(1/2): %.5f at 1e4, %.5f at 1e7 (A_F = %.5f)" % (lo, hi, a_f)


# -- 9 ---------------------------------------------------------------------

def criterion_9():
    indices = [(fast, F.degree) for F, _, _, fast, _ in oracle_runs()]
    indices += [(slow, F.degree) for F, _, _, _, slow in oracle_runs()]
    indices.append((taxicab_run()[0], 3))
    for cs in ("1 0 0 0 1", "1 0 0 0 16"):
        F = F_(cs)
        for Z in LADDER:
            indices.append((enumerate_reps(F, Z, exact_box(F, Z)), 4))
    worst = max((max((len(r) for _, r in idx.items()), default=0) for idx, _ in indices))
    bad = sum(not thue_audit(idx, d) for idx, d in indices)
    return bad == 0, "%d enumerations audited, most reps for one h = %d" % (len(indices), worst)


# -- pytest wrappers ---------------------------------------------------------

def _check(acceptance, n, fn):
    ok, detail = fn()
    acceptance(n, ok, detail)
    assert ok, detail


def test_criterion_01_area(acceptance):
    _check(acceptance, 1, criterion_1)


def test_criterion_02_automorphisms(acceptance):
    _check(acceptance, 2, criterion_2)


def test_criterion_03_lattices(acceptance):
    _check(acceptance, 3, criterion_3)


def test_criterion_04_weights(acceptance):
    _check(acceptance, 4, criterion_4)


def test_criterion_05_hooley(acceptance):
    _check(acceptance, 5, criterion_5)


def test_criterion_06_counting_oracle(acceptance):
    _check(acceptance, 6, criterion_6)


@pytest.mark.xfail(strict=True, reason=(
    "over all of Z^2 many more h than +-1729 have two swap-orbits, e.g. "
    "91 = 3^3 + 4^3 = 6^3 + (-5)^3; the criterion cannot hold as stated"))
def test_criterion_07_taxicab(acceptance):
    _check(acceptance, 7, criterion_7)


def test_criterion_08_convergence(acceptance):
    _check(acceptance, 8, criterion_8)


def test_criterion_09_thue_audit(acceptance):
    _check(acceptance, 9, criterion_9)


def test_criterion_10_mahler(acceptance):
    _check(acceptance, 10, criterion_10)


if __name__ == "__main__":
    for n, fn in enumerate([criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10], 1):
        ok, detail = fn()
        print("criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
