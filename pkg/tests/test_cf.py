"""Continued fractions: exact Gauss map, interval arithmetic on decimals."""

from fractions import Fraction

import pytest

from qc1d import (
    PrecisionExhaustedError,
    coefficient_bound_report,
    continued_fraction,
    parse_number,
)


def test_golden_minus_one_is_all_ones():
    cf = continued_fraction(parse_number("golden-1"), 15)
    assert cf.coefficients == (0,) + (1,) * 14
    assert not cf.terminated


def test_sqrt5_minus_two_is_all_fours():
    cf = continued_fraction(parse_number("sqrt5-2"), 8)
    assert cf.coefficients == (0, 4, 4, 4, 4, 4, 4, 4)
    assert cf.denominators() == [1, 4, 17, 72, 305, 1292, 5473, 23184]


def test_rational_terminates():
    cf = continued_fraction(Fraction(1, 3), 10)
    assert cf.coefficients == (0, 3)
    assert cf.terminated
    assert cf.convergents() == [(0, 1), (1, 3)]
    assert cf.value() == Fraction(1, 3)


def test_integer_input():
    cf = continued_fraction(7, 5)
    assert cf.coefficients == (7,)
    assert cf.terminated


def test_convergents_alternate_around_value():
    x = parse_number("golden-1")
    cf = continued_fraction(x, 12)
    errs = [Fraction(p) / q - Fraction(float(x)).limit_denominator(10 ** 15)
            for p, q in cf.convergents()[1:]]
    signs = [1 if e > 0 else -1 for e in errs]
    assert signs == [(-1) ** k for k in range(len(signs))]


def test_convergents_satisfy_quadratic_bound():
    for token in ("golden-1", "sqrt5-2", "sqrt2-1"):
        x = parse_number(token)
        cf = continued_fraction(x, 10)
        for p, q in cf.convergents()[1:]:
            assert abs(float(x) - p / q) < 1.0 / q ** 2


def test_decimal_string_uses_interval_arithmetic():
    cf = continued_fraction("0.6180339887498948482", 20)
    assert cf.coefficients == (0,) + (1,) * 19


def test_decimal_string_runs_out_of_digits():
    with pytest.raises(PrecisionExhaustedError):
        continued_fraction("0.618", 20)


def test_short_decimal_still_gives_trusted_prefix():
    cf = continued_fraction("0.618", 4)
    assert cf.coefficients[:3] == (0, 1, 1)


def test_bound_report_counts_and_positions():
    cf = continued_fraction(parse_number("sqrt5-2"), 8)
    rep = coefficient_bound_report(cf, 4)
    assert rep.count_at_or_above == 7
    assert rep.positions == (1, 2, 3, 4, 5, 6, 7)
    assert rep.all_satisfy
    assert rep.min_coefficient == 4
    assert rep.first_violation_index is None


def test_bound_report_ignores_integer_part():
    # golden itself has a_0 = 1; the report must skip it
    cf = continued_fraction(parse_number("golden"), 10)
    rep = coefficient_bound_report(cf, 1)
    assert rep.terms_checked == 9
    assert rep.all_satisfy
    rep4 = coefficient_bound_report(cf, 4)
    assert rep4.count_at_or_above == 0
    assert not rep4.all_satisfy
    assert rep4.first_violation_index == 1


def test_quadratic_surd_input():
    from qc1d import QuadSurd

    # (3 - sqrt5)/2 = (golden-1)^2, whose expansion is [0; 2, 1, 1, 1, ...]
    x = QuadSurd(Fraction(3, 2), Fraction(-1, 2), 5)
    assert x == (parse_number("golden-1")) * (parse_number("golden-1"))
    cf = continued_fraction(x, 10)
    assert cf.coefficients == (0, 2) + (1,) * 8
    p, q = cf.convergents()[-1]
    assert abs(float(x) - p / q) < 1.0 / q ** 2
