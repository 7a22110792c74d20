import math

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from binform.area import (a_f_closed_binomial, a_f_closed_cubic, a_f_quadrature, gamma,
                          singular_angles, unit_circle_min)
from binform.errors import InvalidFormError
from binform.forms import BinaryForm, RationalMatrix2, act, discriminant

F_ = BinaryForm.parse


def rel(a, b):
    return abs(a / b - 1)


def test_gamma_sanity():
    with mpmath.workdps(50):
        assert abs(gamma(mpmath.mpf(1) / 2) - mpmath.sqrt(mpmath.pi)) < mpmath.mpf(10) ** -45
        x = mpmath.mpf(1) / 3
        assert abs(gamma(x + 1) - x * gamma(x)) < mpmath.mpf(10) ** -45


@pytest.mark.parametrize("delta,value", [(81, 7.64381), (-27, 5.29992), (-108, 4.20655)])
def test_closed_cubic(delta, value):
    assert float(a_f_closed_cubic(delta).value) == pytest.approx(value, abs=1e-5)


@pytest.mark.parametrize("abd,value", [((1, 1, 3), 5.29992), ((1, 1, 4), 3.70815),
                                       ((1, -1, 4), 5.24412)])
def test_closed_binomial(abd, value):
    # Gamma(1/4) Gamma(1/2) / Gamma(3/4) = 5.244115..., hence 5.24412 for (1, -1, 4)
    assert float(a_f_closed_binomial(*abd).value) == pytest.approx(value, abs=1e-5)


def test_closed_forms_reject():
    with pytest.raises(InvalidFormError):
        a_f_closed_cubic(0)
    with pytest.raises(InvalidFormError):
        a_f_closed_binomial(0, 1, 3)


@pytest.mark.parametrize("cs,expect", [
    ("1 0 0 1", [3 * math.pi / 4]),
    ("0 1 1 0", [0.0, math.pi / 2, 3 * math.pi / 4]),
    ("1 0 0 0 1", []),
])
def test_singular_angles(cs, expect):
    got = [float(t) for t in singular_angles(F_(cs))]
    assert got == pytest.approx(expect, abs=1e-14)


@given(st.tuples(*[st.integers(-9, 9)] * 4).filter(any))
@settings(max_examples=25)
def test_cubic_quadrature_matches_closed_form(cs):
    F = BinaryForm(cs)
    D = discriminant(F)
    assume(D != 0)
    est = a_f_quadrature(F)
    assert est.abs_error_bound <= 1e-10
    assert rel(est.value, a_f_closed_cubic(D).value) < 1e-9


@given(st.integers(3, 8), st.integers(-40, 40).filter(bool), st.integers(-40, 40).filter(bool))
@settings(max_examples=25)
def test_binomial_quadrature_matches_closed_form(d, a, b):
    F = BinaryForm([a] + [0] * (d - 1) + [b])
    assert rel(a_f_quadrature(F).value, a_f_closed_binomial(a, b, d).value) < 1e-9


@given(st.sampled_from(["1 0 0 2", "1 0 0 0 1", "1 2 0 0 -3", "0 1 1 0", "1 0 1 0 1"]),
       st.tuples(*[st.integers(-3, 3)] * 4).filter(lambda t: t[0] * t[3] != t[1] * t[2]))
@settings(max_examples=20)
def test_gl2_covariance(cs, t):
    F, T = F_(cs), RationalMatrix2(*t)
    lhs = a_f_quadrature(act(F, T)).value
    rhs = a_f_quadrature(F).value / abs(T.det)
    assert rel(lhs, rhs) < 1e-9


@given(st.sampled_from(["1 0 0 2", "1 0 0 0 1", "1 -1 0 2 5"]), st.integers(1, 50))
@settings(max_examples=15)
def test_scaling_law(cs, c):
    F = F_(cs)
    cF = BinaryForm([c * x for x in F.coeffs])
    expect = a_f_quadrature(F).value * mpmath.mpf(c) ** (mpmath.mpf(-2) / F.degree)
    assert rel(a_f_quadrature(cF).value, expect) < 1e-9


def test_rejects_bad_input():
    with pytest.raises(InvalidFormError):
        a_f_quadrature(F_("1 2 1 0"))
    with pytest.raises(InvalidFormError):
        a_f_quadrature(F_("1 0 0 1"), tol=0)


def test_report_fields():
    js = a_f_quadrature(F_("1 0 0 1")).to_json()
    assert set(js) == {"a_f", "a_f_error_bound", "method", "singular_angles"}
    assert js["method"] == "quadrature"


@pytest.mark.parametrize("cs,true_min", [("1 0 0 0 1", 0.5), ("1 0 0 0 16", 16 / 17)])
def test_unit_circle_min(cs, true_min):
    est, lower = unit_circle_min(F_(cs))
    assert 0 < lower <= true_min
    assert est == pytest.approx(true_min, rel=1e-9)
