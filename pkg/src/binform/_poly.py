"""Exact univariate polynomial helpers (coefficient lists, highest degree first)."""

from fractions import Fraction

import mpmath


def strip(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return list(p[i:])


def mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def polyval(p, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def derivative(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])] or [0]


def rem(p, q):
    p = [Fraction(c) for c in strip(p)]
    q = [Fraction(c) for c in strip(q)]
    if q == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    while len(p) >= len(q) and p != [0]:
        f = p[0] / q[0]
        for i in range(len(q)):
            p[i] -= f * q[i]
        p = strip(p[1:]) if len(p) > 1 else [Fraction(0)]
    return p


def sturm_sequence(p):
    seq = [strip(p), strip(derivative(strip(p)))]
    while len(seq[-1]) > 1:
        r = rem(seq[-2], seq[-1])
        if r == [0]:
            break
        seq.append([-c for c in r])
    return seq


def _sign(x):
    return (x > 0) - (x < 0)


def _variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def variations_at(seq, x):
    """Sign changes of a Sturm sequence at a finite point x."""
    return _variations([_sign(polyval(s, x)) for s in seq])


def variations_at_infinity(seq, positive):
    signs = []
    for s in seq:
        deg = len(s) - 1
        lead = _sign(s[0])
        if not positive and deg % 2:
            lead = -lead
        signs.append(lead)
    return _variations(signs)


def count_real_roots(p):
    """Number of distinct real roots of a nonconstant polynomial."""
    p = strip(p)
    if len(p) <= 1:
        return 0
    seq = sturm_sequence(p)
    return variations_at_infinity(seq, False) - variations_at_infinity(seq, True)


def root_bound(p):
    p = strip(p)
    lead = abs(Fraction(p[0]))
    return 1 + max((abs(Fraction(c)) / lead for c in p[1:]), default=Fraction(0))


def isolate_real_roots(p):
    """Disjoint rational intervals (lo, hi), each holding exactly one real root.

    p must be squarefree. Endpoints are never roots.
    """
    p = strip(p)
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    b = root_bound(p) + 1
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = variations_at(seq, lo) - variations_at(seq, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        for k in (2, 3, 5, 7, 11):
            mid = lo + (hi - lo) / k
            if polyval(p, mid) != 0:
                break
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


def refine_root(p, lo, hi, prec):
    """Bisect an isolating interval down to `prec` bits with mpmath."""
    with mpmath.workprec(prec + 20):
        a = mpmath.mpf(lo.numerator) / lo.denominator
        b = mpmath.mpf(hi.numerator) / hi.denominator
        fa = _sign(polyval(p, lo))
        tol = mpmath.ldexp(1, -prec) * max(1, abs(a), abs(b))
        while b - a > tol:
            mid = (a + b) / 2
            fm = mpmath.polyval(p, mid)
            if fm == 0:
                return +mid
            if _sign(fm) == fa:
                a = mid
            else:
                b = mid
        return (a + b) / 2


def bareiss_det(m):
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def sylvester(p, q):
    """Sylvester matrix of two coefficient lists (treated as binary forms of degrees len-1)."""
    n, m = len(p) - 1, len(q) - 1
    size = n + m
    rows = []
    for i in range(m):
        rows.append([0] * i + list(p) + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + list(q) + [0] * (size - m - 1 - i))
    return rows


def divisors(n):
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def factorize(n):
    """Trial-division factorization of |n| as {prime: exponent}."""
    n = abs(n)
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def iroot(n, k):
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n < 2:
        return n
    r = 1 << (n.bit_length() // k + 1)
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    return None
