"""Exact length arithmetic: rational coordinates over a named basis."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qc1d import (
    AmbiguousOrderError,
    Basis,
    BasisMismatchError,
    as_length,
    golden_basis,
    sort_lengths,
    unit_basis,
)

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=64
)


def test_basis_requires_unit_element():
    with pytest.raises(ValueError):
        Basis(("golden",), (1.618,))


def test_from_name_map_builds_lengths():
    b = Basis(("1", "sqrt2"), (1.0, 2 ** 0.5))
    x = b.from_name_map({"1": Fraction(1, 2), "sqrt2": 3})
    assert x.coeffs == (Fraction(1, 2), Fraction(3))
    with pytest.raises(KeyError):
        b.from_name_map({"sqrt3": 1})


def test_as_length_parses_strings(golden):
    assert float(as_length("1/2", golden)) == 0.5
    assert as_length("golden", golden).coeffs == (Fraction(0), Fraction(1))
    assert as_length("2*golden", golden).coeffs == (Fraction(0), Fraction(2))
    assert as_length("1/2 + golden", golden).coeffs == (Fraction(1, 2), Fraction(1))
    assert as_length("golden - 1", golden).coeffs == (Fraction(-1), Fraction(1))
    assert as_length("-golden", golden).coeffs == (Fraction(0), Fraction(-1))


def test_as_length_rejects_unknown_name(golden):
    with pytest.raises(ValueError):
        as_length("tau", golden)


def test_mixed_bases_refuse_arithmetic(golden, unit):
    with pytest.raises(BasisMismatchError):
        as_length(1, golden) + as_length(1, unit)


def test_exact_comparison_is_not_float_comparison(golden):
    # 1000 golden vs the closest float rational: floats agree, exact order holds
    g = as_length("golden", golden)
    assert g + g > as_length(3, golden)
    assert g < as_length(Fraction(13, 8), golden)  # 1.625
    assert g > as_length(Fraction(8, 5), golden)  # 1.6


def test_sort_lengths_orders_exactly(golden):
    vals = [
        as_length("golden", golden),
        as_length(1, golden),
        as_length("2*golden - 2", golden),  # ~1.236
        as_length(Fraction(3, 2), golden),
    ]
    out = sort_lengths(vals)
    assert [float(v) for v in out] == sorted(float(v) for v in vals)


def test_sort_accepts_exact_duplicates(golden):
    a = as_length(Fraction(5, 3), golden)
    b = as_length("5/3", golden)
    lo, hi = sort_lengths([b, a])
    assert lo == hi == a


def test_sort_raises_on_guard_band_tie(golden):
    # a rational within 1e-13 of golden: distinct exactly, unresolvable in floats
    approx = Fraction(1.618033988749895).limit_denominator(10 ** 12)
    pair = [as_length("golden", golden), as_length(approx, golden)]
    with pytest.raises(AmbiguousOrderError):
        sort_lengths(pair)


@given(a=rationals, b=rationals, c=rationals, d=rationals)
def test_field_arithmetic_matches_coefficientwise(a, b, c, d):
    basis = golden_basis()
    x = as_length(a, basis) + as_length(b, basis) * c
    y = as_length(d, basis)
    assert (x + y).coeffs == (a + b * c + d, Fraction(0))
    assert (x - y).coeffs == (a + b * c - d, Fraction(0))


@given(a=rationals, b=rationals)
def test_sign_agrees_with_float_when_far_from_zero(a, b):
    basis = golden_basis()
    x = as_length(a, basis) + as_length("golden", basis) * b
    if abs(float(x)) > 1e-9:
        assert x.sign() == (1 if float(x) > 0 else -1)


def test_zero_and_is_zero(unit):
    z = unit.zero
    assert z.is_zero()
    assert not unit.one.is_zero()
    assert (unit.one - unit.one).is_zero()


def test_is_rational_and_as_fraction(golden):
    q = as_length(Fraction(7, 4), golden)
    assert q.is_rational()
    assert q.as_fraction() == Fraction(7, 4)
    g = as_length("golden", golden)
    assert not g.is_rational()
    with pytest.raises(ValueError):
        g.as_fraction()
