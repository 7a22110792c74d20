"""Integer binary forms and the exact GL2(Q) action on them.

Coefficients are stored highest power of x first: ``coeffs[i]`` multiplies
``x**(d-i) * y**i``. So ``(1, 0, 0, 1)`` is x^3 + y^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce

import mpmath

from . import _poly
from .errors import InvalidFormError


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _norm(v):
    """Collapse integral Fractions to int so integer forms stay integer-typed."""
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


@dataclass(frozen=True)
class RationalMatrix2:
    """A 2x2 matrix over Q, entries row-major (a1, a2, a3, a4)."""

    entries: tuple

    def __init__(self, a1, a2=None, a3=None, a4=None):
        if a2 is None:
            a1, a2, a3, a4 = a1
        ents = tuple(_frac(v) for v in (a1, a2, a3, a4))
        if ents[0] * ents[3] - ents[1] * ents[2] == 0:
            raise InvalidFormError("singular matrix")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def from_primitive(cls, a, ints):
        return cls(*(Fraction(v, a) for v in ints))

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> Fraction:
        a1, a2, a3, a4 = self.entries
        return a1 * a4 - a2 * a3

    @cached_property
    def primitive(self):
        """(a, (a1', a2', a3', a4')) with entries = ai'/a, a > 0 and gcd(ai') = 1."""
        a = reduce(math.lcm, (e.denominator for e in self.entries), 1)
        ints = tuple(int(e * a) for e in self.entries)
        return a, ints

    @property
    def denominator(self) -> int:
        return self.primitive[0]

    def key(self):
        a, ints = self.primitive
        return (a,) + ints

    def is_integral(self) -> bool:
        return self.primitive[0] == 1

    def __matmul__(self, other: RationalMatrix2) -> RationalMatrix2:
        a1, a2, a3, a4 = self.entries
        b1, b2, b3, b4 = other.entries
        return RationalMatrix2(
            a1 * b1 + a2 * b3, a1 * b2 + a2 * b4, a3 * b1 + a4 * b3, a3 * b2 + a4 * b4
        )

    def __neg__(self):
        return RationalMatrix2(*(-e for e in self.entries))

    def inverse(self) -> RationalMatrix2:
        a1, a2, a3, a4 = self.entries
        D = self.det
        return RationalMatrix2(a4 / D, -a2 / D, -a3 / D, a1 / D)

    def apply(self, x, y):
        a1, a2, a3, a4 = self.entries
        return a1 * x + a2 * y, a3 * x + a4 * y

    def __pow__(self, n: int):
        out = RationalMatrix2.identity()
        for _ in range(n):
            out = out @ self
        return out

    def order(self, limit=12):
        """Multiplicative order, or None if larger than ``limit``."""
        ident = RationalMatrix2.identity()
        p = self
        for k in range(1, limit + 1):
            if p == ident:
                return k
            p = p @ self
        return None

    def to_json(self):
        a, ints = self.primitive
        return {"denominator": a, "numerators": list(ints),
                "entries": [str(e) for e in self.entries]}

    def __repr__(self):
        return "RationalMatrix2(%s)" % ", ".join(str(e) for e in self.entries)


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple

    def __init__(self, coeffs):
        cs = tuple(_norm(_frac(c)) if not isinstance(c, int) else c for c in coeffs)
        if len(cs) < 2:
            raise InvalidFormError("a binary form needs at least two coefficients")
        if all(c == 0 for c in cs):
            raise InvalidFormError("the zero form is not allowed")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def parse(cls, text):
        """Parse "1 0 0 1" (leading coefficient first) into x^3 + y^3."""
        parts = text.split() if isinstance(text, str) else list(text)
        try:
            cs = [int(p) for p in parts]
        except (TypeError, ValueError):
            raise InvalidFormError("coefficients must be integers: %r" % (text,)) from None
        return cls(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __call__(self, x, y):
        return evaluate(self, x, y)

    def dehomogenize(self):
        """F(x, 1) as a coefficient list, highest degree first (leading zeros kept)."""
        return list(self.coeffs)

    def __str__(self):
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "*".join(s for s in (_pw("x", d - i), _pw("y", i)) if s)
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(str(c) + ("*" + mono if mono else ""))
        return " + ".join(terms).replace("+ -", "- ")

    def text(self):
        return " ".join(str(c) for c in self.coeffs)


def _pw(v, k):
    if k == 0:
        return ""
    return v if k == 1 else "%s^%d" % (v, k)


@dataclass(frozen=True)
class SplittingType:
    has_real_linear_factor: bool
    reducible_over_Q: bool | None = None
    irreducible_cubic: bool = field(default=False)


def evaluate(F: BinaryForm, x, y):
    d = F.degree
    # Horner in x/y keeps everything integral
    acc = 0
    ypow = 1
    xs = [1]
    for _ in range(d):
        xs.append(xs[-1] * x)
    for i, c in enumerate(F.coeffs):
        acc += c * xs[d - i] * ypow
        ypow *= y
    return acc


def act(F: BinaryForm, A: RationalMatrix2) -> BinaryForm:
    """F_A(x, y) = F(a1 x + a2 y, a3 x + a4 y), exact."""
    a1, a2, a3, a4 = (_norm(e) for e in A.entries)
    d = F.degree
    p1 = [[1]]
    p2 = [[1]]
    for _ in range(d):
        p1.append(_poly.mul(p1[-1], [a1, a2]))
        p2.append(_poly.mul(p2[-1], [a3, a4]))
    out = [0] * (d + 1)
    for i, c in enumerate(F.coeffs):
        if c == 0:
            continue
        term = _poly.mul(p1[d - i], p2[i])
        for k, t in enumerate(term):
            out[k] += c * t
    return BinaryForm([_norm(_frac(c)) for c in out])


def _homogeneous_resultant(p, q):
    return _poly.bareiss_det(_poly.sylvester(p, q))


def discriminant(F: BinaryForm):
    """Discriminant normalised so that for a cubic it equals
    18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2.

    Computed as (-1)^(d(d-1)/2) Res(F_x, F_y) / d^(d-2). Rational forms are
    cleared to integers first (Disc(cF) = c^(2d-2) Disc(F)).
    """
    d = F.degree
    if d < 2:
        raise InvalidFormError("discriminant needs degree >= 2")
    scale = reduce(math.lcm, (_frac(c).denominator for c in F.coeffs), 1)
    cs = [int(_frac(c) * scale) for c in F.coeffs]
    fx = [(d - i) * cs[i] for i in range(d)]
    fy = [i * cs[i] for i in range(1, d + 1)]
    res = _homogeneous_resultant(fx, fy)
    num = (-1) ** (d * (d - 1) // 2) * res
    q, r = divmod(num, d ** (d - 2))
    if r:
        raise AssertionError("resultant not divisible by d^(d-2)")
    if scale == 1:
        return q
    return _norm(Fraction(q, scale ** (2 * d - 2)))


def hessian(F: BinaryForm):
    """Hessian covariant coefficients (A, B, C) of a cubic b3 x^3 + b2 x^2 y + b1 x y^2 + b0 y^3."""
    if F.degree != 3:
        raise InvalidFormError("hessian covariant is defined here for cubics only")
    b3, b2, b1, b0 = F.coeffs
    return (b2 * b2 - 3 * b3 * b1, b2 * b1 - 9 * b3 * b0, b1 * b1 - 3 * b2 * b0)


def require_analyzable(F: BinaryForm):
    if not F.is_integral():
        raise InvalidFormError("form must have integer coefficients")
    if F.degree < 3:
        raise InvalidFormError("degree must be at least 3 (got %d)" % F.degree)
    if discriminant(F) == 0:
        raise InvalidFormError("form has zero discriminant")


def _has_rational_root(cs):
    """Rational root test on an integer polynomial (highest degree first)."""
    cs = _poly.strip(cs)
    if len(cs) == 1:
        return False
    if cs[-1] == 0:
        return True
    g = reduce(math.gcd, cs)
    cs = [c // g for c in cs]
    for p in _poly.divisors(cs[-1]):
        for q in _poly.divisors(cs[0]):
            for s in (p, -p):
                if _poly.polyval(cs, Fraction(s, q)) == 0:
                    return True
    return False


def real_linear_factor(F: BinaryForm) -> bool:
    if F.degree % 2 == 1 or F.coeffs[0] == 0:
        return True
    return _poly.count_real_roots(F.dehomogenize()) > 0


def splitting_type(F: BinaryForm) -> SplittingType:
    if discriminant(F) == 0:
        raise InvalidFormError("form has zero discriminant")
    has_real = real_linear_factor(F)
    reducible = None
    if F.degree == 3:
        # y | F when the x^3 coefficient vanishes
        reducible = F.coeffs[0] == 0 or _has_rational_root(F.dehomogenize())
    return SplittingType(
        has_real_linear_factor=has_real,
        reducible_over_Q=reducible,
        irreducible_cubic=reducible is False,
    )


@dataclass(frozen=True)
class Exponent:
    """An exponent that may be an exact rational or a quadratic surd."""

    text: str
    exact: Fraction | None
    value: float
    decimal: str

    def __lt__(self, other):
        return self.value < float(other)

    def __float__(self):
        return self.value


def _exp_rational(fr: Fraction) -> Exponent:
    with mpmath.workdps(30):
        dec = mpmath.nstr(mpmath.mpf(fr.numerator) / fr.denominator, 20)
    return Exponent(str(fr), fr, float(fr), dec)


def beta_exponent(F: BinaryForm) -> Exponent:
    """Error-term exponent; depends only on the degree and the real splitting type."""
    d = F.degree
    if d < 3:
        raise InvalidFormError("degree must be at least 3")
    st = splitting_type(F)
    if st.has_real_linear_factor:
        if d == 3:
            return _exp_rational(Fraction(12, 19) if st.irreducible_cubic else Fraction(1, 2))
        if d <= 8:
            s = math.isqrt(d)
            if s * s == d:
                return _exp_rational(Fraction(3, (d - 2) * s + 3))
            with mpmath.workdps(30):
                v = 3 / ((d - 2) * mpmath.sqrt(d) + 3)
                return Exponent("3/(%d*sqrt(%d)+3)" % (d - 2, d), None, float(v),
                                mpmath.nstr(v, 20))
        return _exp_rational(Fraction(1, d - 1))
    if d == 4:
        return _exp_rational(Fraction(3, 8))
    if d == 6:
        with mpmath.workdps(30):
            v = 1 / (2 * mpmath.sqrt(6))
            return Exponent("1/(2*sqrt(6))", None, float(v), mpmath.nstr(v, 20))
    return _exp_rational(Fraction(1, d - 1))
