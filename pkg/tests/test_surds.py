"""Exact quadratic-surd arithmetic and the number parser."""

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qc1d import QuadSurd, golden, parse_number

small = st.fractions(min_value=Fraction(-9), max_value=Fraction(9), max_denominator=12)


def test_golden_ratio_identity():
    g = golden()
    assert g * g == g + 1
    assert 1 / g == g - 1


def test_sign_is_exact_near_zero():
    # 2889/1292 is a convergent of sqrt(5); the difference is ~1e-7
    x = QuadSurd(Fraction(-2889, 1292), 1, 5)
    assert x.sign() == -1
    assert (-x).sign() == 1
    assert QuadSurd(0, 0, 5).sign() == 0


def test_floor_and_frac():
    g = golden()
    assert math.floor(g) == 1
    assert math.floor(-g) == -2
    assert g.frac() == g - 1
    assert float(g.frac()) == pytest.approx(0.6180339887498949)


def test_rationals_enter_any_field():
    assert QuadSurd(1, 0, 5) + QuadSurd(0, 1, 2) == QuadSurd(1, 1, 2)
    assert QuadSurd(Fraction(1, 2), 0, 7) * 4 == 2


def test_mixed_radicals_refuse():
    with pytest.raises(ValueError):
        QuadSurd(0, 1, 2) + QuadSurd(0, 1, 3)


def test_radicand_must_be_square_free():
    with pytest.raises(ValueError):
        QuadSurd(0, 1, 8)


def test_parse_number_forms():
    assert parse_number("1/3") == Fraction(1, 3)
    assert parse_number("golden-1") == golden() - 1
    assert parse_number("sqrt5-2") == QuadSurd(-2, 1, 5)
    x = parse_number("2*sqrt2+1/2")
    assert x == QuadSurd(Fraction(1, 2), 2, 2)
    assert float(x) == pytest.approx(0.5 + 2 * math.sqrt(2))


def test_parse_number_decimal_is_exact_literal():
    assert parse_number("0.25") == Fraction(1, 4)


@given(a=small, b=small, c=small, d=small)
def test_field_axioms_sqrt5(a, b, c, d):
    x = QuadSurd(a, b, 5)
    y = QuadSurd(c, d, 5)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + 1) == x * y + x
    if y != 0:
        assert (x / y) * y == x


@given(a=small, b=small)
def test_sign_matches_float(a, b):
    x = QuadSurd(a, b, 5)
    f = float(a) + float(b) * math.sqrt(5)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)
    assert math.floor(x) <= f < math.floor(x) + 1 + 1e-9


@given(a=small, b=small)
def test_frac_in_unit_interval(a, b):
    x = QuadSurd(a, b, 5)
    r = x.frac()
    assert 0 <= float(r) < 1
    assert (x - r).frac() == 0
