from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from petaluma.errors import NormalizationFailure
from petaluma.polynomial import Jet, LaurentPolynomial, parse_polynomial

coeffs = st.dictionaries(st.integers(-4, 4), st.integers(-20, 20), max_size=5)
polys = coeffs.map(LaurentPolynomial)


def P(text):
    return parse_polynomial(text)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPolynomial()


@given(polys, polys)
def test_exact_division_recovers_factor(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a


def test_inexact_division_raises():
    with pytest.raises(ArithmeticError):
        P("t^2+1").exact_div(P("t+1"))


@given(polys)
def test_text_round_trip(a):
    assert parse_polynomial(str(a)) == a


def test_formatting():
    assert str(P("t - 1 + t^-1")) == "t^1 - 1 + t^-1"
    assert str(P("-2*t^2 + 3")) == "-2*t^2 + 3"
    assert str(LaurentPolynomial()) == "0"


def test_quarter_exponents_parse():
    p = P("t^(1/2) + t^(-3/4)")
    assert p.coeff(Fraction(1, 2)) == 1
    assert p.coeff(Fraction(-3, 4)) == 1


@given(polys)
def test_jet_matches_derivatives(a):
    j = a.jet()
    d1 = a.derivative()
    assert j.d0 == a(1)
    assert j.d1 == d1(1)
    assert j.d2 == d1.derivative()(1)


@given(polys, polys)
def test_jet_is_multiplicative(a, b):
    assert (a * b).jet() == a.jet() * b.jet()


def test_jet_arithmetic():
    x = Jet.variable()
    assert x * x == Jet(1, 2, 2)
    assert (x - 1) * 3 == Jet(0, 3, 0)


def test_invert_variable():
    assert P("t^3 + 2*t^-1").invert_variable() == P("t^-3 + 2*t")


def test_alexander_normalization():
    # the trefoil determinant up to a unit
    raw = P("-t^5 + t^4 - t^3")
    assert raw.normalize_alexander() == P("t - 1 + t^-1")
    assert P("-1").normalize_alexander() == P("1")


def test_normalization_rejects_non_alexander():
    with pytest.raises(NormalizationFailure):
        P("t + 2").normalize_alexander()


def test_evaluation_and_shift():
    p = P("t^2 - t + 1")
    assert p(2) == 3
    assert p.shift(-1) == P("t - 1 + t^-1")
    assert p.span() == 2
