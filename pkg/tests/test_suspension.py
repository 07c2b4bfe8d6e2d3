"""Suspending words into measures: weighted combs and profile gluing."""

from fractions import Fraction

import pytest

from qc1d import (
    AmbiguousProfilesWarning,
    PieceContent,
    Piece,
    SuspensionParams,
    Word,
    as_length,
    cell_boundaries,
    comb_cell,
    decompose,
    detect_eventual_period,
    fibonacci_kp_params,
    fibonacci_word,
    golden_basis,
    silent_two_cell_params,
    suspend,
    suspend_with_profiles,
    unit_basis,
)


def atoms_of(window):
    return [(float(o), w) for o, w in window.content.atoms]


# -- numeric-symbol suspension ---------------------------------------------------


def test_suspend_unit_symbols():
    m = suspend(Word("111"), {"1": 1})
    assert atoms_of(m) == [(0.0, Fraction(1))] * 1 + [
        (1.0, Fraction(1)),
        (2.0, Fraction(1)),
    ]
    assert float(m.end) == 3.0


def test_suspend_two_symbols_golden_lengths():
    m = suspend(Word("12"), {"1": 1, "2": "golden"}, basis=golden_basis())
    assert atoms_of(m) == [(0.0, Fraction(1)), (1.0, Fraction(2))]
    assert m.end == as_length("1 + golden", golden_basis())


def test_suspend_drops_zero_symbols():
    m = suspend(Word("0101"), {"0": 1, "1": 1})
    assert atoms_of(m) == [(1.0, Fraction(1)), (3.0, Fraction(1))]


def test_suspend_is_linear_in_symbol_weights():
    lengths = {"1": 1, "2": 1, "3": 1}
    single = suspend(Word("123"), lengths)
    assert atoms_of(single) == [
        (0.0, Fraction(1)),
        (1.0, Fraction(2)),
        (2.0, Fraction(3)),
    ]
    # tripling every symbol value triples every weight
    tripled = suspend(Word("369"), {"3": 1, "6": 1, "9": 1})
    assert [w for _, w in tripled.content.atoms] == [
        3 * w for _, w in single.content.atoms
    ]


def test_suspend_rejects_non_numeric_symbols_without_params():
    with pytest.raises(ValueError):
        suspend(Word("ab"), {"a": 1, "b": 2})


# -- cell boundaries ---------------------------------------------------------------


def test_boundaries_are_cumulative_lengths():
    params = SuspensionParams.point_masses(
        {"a": 1, "b": 2}, {"a": 1, "b": 3}, unit_basis()
    )
    got = cell_boundaries(Word("abab", origin=-2), params)
    assert [float(x) for x in got] == [0.0, 1.0, 4.0, 5.0, 8.0]


def test_boundaries_golden_word():
    got = cell_boundaries(Word("ab"), fibonacci_kp_params(1))
    b = golden_basis()
    assert got == [b.zero, as_length(1, b), as_length("1 + golden", b)]


# -- profile suspension ------------------------------------------------------------


def test_profiles_glue_without_overlap():
    dec = suspend_with_profiles(fibonacci_word(6), fibonacci_kp_params(3))
    assert dec.verify_round_trip()
    weights = {w for _, w in dec.window.content.atoms}
    assert weights == {Fraction(3)}


def test_profile_suspension_matches_weight_suspension():
    # the KP profile set and the raw numeric suspension build the same comb
    word = Word("121121", origin=0)
    params = SuspensionParams.point_masses(
        {"1": 1, "2": 2}, {"1": 1, "2": 1}, unit_basis()
    )
    via_profiles = suspend_with_profiles(word, params).window
    via_weights = suspend(word, {"1": 1, "2": 1})
    assert via_profiles.content == via_weights.content


def test_step_profiles():
    b = unit_basis()
    one = as_length(1, b)
    nu1 = Piece(one, PieceContent(steps=[(b.zero, one, Fraction(1))]), "1")
    nu2 = Piece(one, PieceContent(steps=[(b.zero, one, Fraction(2))]), "2")
    with pytest.warns(AmbiguousProfilesWarning):
        dec = suspend_with_profiles(Word("1221"), SuspensionParams({"1": nu1, "2": nu2}))
    assert [(float(s), float(e), d) for s, e, d in dec.window.content.steps] == [
        (0.0, 1.0, Fraction(1)),
        (1.0, 3.0, Fraction(2)),
        (3.0, 4.0, Fraction(1)),
    ]


def test_delta_profiles_always_periodic():
    # identical point-mass profiles erase the word: suspension is a lattice comb
    params = SuspensionParams.point_masses(
        {"a": 2, "b": 2}, {"a": 1, "b": 1}, unit_basis()
    )
    dec = suspend_with_profiles(fibonacci_word(9).window(0, 40), params)
    found = detect_eventual_period(dec.window)
    assert found is not None
    x0, p = found
    assert (float(x0), float(p)) == (0.0, 1.0)


def test_round_trip_through_decompose():
    params = fibonacci_kp_params(2)
    dec = suspend_with_profiles(fibonacci_word(7), params)
    rec = decompose(dec.window, params.piece_set(), 0)
    assert "".join(rec.labels) == fibonacci_word(7).as_str()


# -- parameter validation ------------------------------------------------------------


def test_profile_support_must_fit_cell():
    b = unit_basis()
    long_support = Piece(
        as_length(2, b), PieceContent(atoms=[(as_length("3/2", b), Fraction(1))])
    )
    with pytest.raises(ValueError):
        SuspensionParams.from_contents(
            {"a": long_support.content}, b, {"a": 1}
        )


def test_ambiguous_profiles_warn_only_when_lebesgue():
    with pytest.warns(AmbiguousProfilesWarning):
        suspend_with_profiles(Word("sl"), silent_two_cell_params())
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        suspend_with_profiles(Word("ab"), fibonacci_kp_params(1))  # must not warn
