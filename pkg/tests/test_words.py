"""Symbolic sequences: substitutions, rotation codings, scans, file I/O."""

import warnings
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qc1d import (
    AmbiguousSymbolError,
    RationalRotationWarning,
    Word,
    bernoulli_word,
    circle_map_word,
    count_occurrences,
    factor_complexity,
    fibonacci_word,
    gordon_scan,
    load_word,
    parse_number,
    save_word,
    substitution_word,
)


# -- Word container ------------------------------------------------------------


def test_word_indexes_by_absolute_position():
    w = Word("hello", origin=3)
    assert (w.start, w.stop) == (3, 8)
    assert w[3] == "h"
    assert w[7] == "o"
    assert w.window(4, 6).as_str() == "el"
    assert w.window(4, 6).origin == 4


def test_word_rejects_out_of_range():
    w = Word("ab", origin=0)
    with pytest.raises((IndexError, KeyError)):
        w[2]


# -- substitutions ---------------------------------------------------------------


def test_fibonacci_lengths_follow_the_recursion():
    lengths = [len(fibonacci_word(n).symbols) for n in range(1, 11)]
    assert lengths == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]


def test_fibonacci_prefix_property():
    # w_{n} starts with w_{n-1}
    w9 = fibonacci_word(9).as_str()
    w10 = fibonacci_word(10).as_str()
    assert w10.startswith(w9)
    assert w10.startswith("abaababaabaab")


def test_fibonacci_never_contains_bb():
    assert "bb" not in fibonacci_word(12).as_str()
    assert "aaa" not in fibonacci_word(12).as_str()


def test_substitution_max_length_clips():
    w = substitution_word({"a": "ab", "b": "a"}, "a", 9, max_length=30)
    assert len(w.symbols) == 30
    assert w.as_str() == fibonacci_word(10).as_str()[:30]


def test_thue_morse_substitution():
    w = substitution_word({"0": "01", "1": "10"}, "0", 5)
    assert w.as_str() == "01101001100101101001011001101001"


# -- rotation codings ------------------------------------------------------------


def test_circle_map_golden_prefix():
    w = circle_map_word("golden-1", "golden-1", (0, 5))
    assert w.as_str() == "01011"


def test_circle_map_matches_high_precision_arithmetic():
    alpha = parse_number("golden-1")
    w = circle_map_word(alpha, alpha, (0, 400))
    with mpmath.workdps(60):
        a = (mpmath.sqrt(5) - 1) / 2
        for n in range(0, 400):
            frac = mpmath.frac(n * a)
            expected = "1" if frac > 1 - a else "0"
            assert w[n] == expected, n


def test_circle_map_custom_symbols_and_range():
    w = circle_map_word("golden-1", "golden-1", (5, 10), symbols=("a", "b"))
    assert w.origin == 5
    assert set(w.alphabet()) <= {"a", "b"}


def test_rational_rotation_warns_and_can_be_constant():
    with pytest.warns(RationalRotationWarning):
        w = circle_map_word(Fraction(1, 3), Fraction(1, 4), (0, 9))
    # the orbit {0, 1/3, 2/3} never enters (3/4, 1]
    assert w.as_str() == "0" * 9


def test_decimal_alpha_agrees_with_exact_value():
    digits = "0.61803398874989484820458683436563811772"
    with warnings.catch_warnings():
        warnings.simplefilter("error")  # decimal path must not warn
        wd = circle_map_word(digits, digits, (0, 200))
    we = circle_map_word("golden-1", "golden-1", (0, 200))
    assert wd.as_str() == we.as_str()


def test_decimal_on_the_boundary_refuses():
    with pytest.raises(AmbiguousSymbolError):
        circle_map_word("0.5", "0.5", (0, 4))


# -- random words ----------------------------------------------------------------


def test_bernoulli_word_is_seed_deterministic():
    w = bernoulli_word(0.5, (0, 20), seed=42)
    assert w.as_str() == "01001000111000110100"
    assert w.as_str() == bernoulli_word(0.5, (0, 20), seed=42).as_str()
    assert w.as_str() != bernoulli_word(0.5, (0, 20), seed=43).as_str()


def test_bernoulli_extremes():
    assert bernoulli_word(0.0, (0, 50), seed=1).as_str() == "0" * 50
    assert bernoulli_word(1.0, (0, 50), seed=1).as_str() == "1" * 50


# -- counting / complexity ---------------------------------------------------------


def test_count_occurrences_allows_overlap():
    assert count_occurrences(Word("aaaa"), "aa") == 3
    assert count_occurrences(Word("abaab"), "ab") == 2
    assert count_occurrences(Word("abaab"), "z") == 0


def test_factor_complexity_sturmian():
    w = fibonacci_word(14)  # 610 symbols: long enough for n <= 12
    assert [factor_complexity(w, n) for n in range(1, 13)] == [
        n + 1 for n in range(1, 13)
    ]


def test_factor_complexity_periodic_saturates():
    w = Word("ab" * 40)
    assert [factor_complexity(w, n) for n in (1, 2, 3, 6)] == [2, 2, 2, 2]


@settings(max_examples=40, deadline=None)
@given(data=st.data(), n=st.integers(min_value=1, max_value=4))
def test_complexity_counts_distinct_blocks(data, n):
    s = data.draw(st.text(alphabet="ab", min_size=n, max_size=40))
    w = Word(s)
    expected = len({s[i : i + n] for i in range(len(s) - n + 1)})
    assert factor_complexity(w, n) == expected


# -- triple-block scans ------------------------------------------------------------


def test_gordon_scan_periodic_word_density_one():
    rep = gordon_scan(Word("ab" * 30), 2)
    assert rep.density == 1.0
    assert rep.positions_scanned == 55


def test_gordon_scan_no_triple_blocks():
    rep = gordon_scan(Word("ab" * 30), 3)
    assert rep.density == 0.0
    assert rep.hits == 0


def test_gordon_scan_multiples_of_period():
    rep = gordon_scan(Word("abc" * 20), 3)
    assert rep.density == 1.0
    assert rep.hit_positions[:4] == (3, 4, 5, 6)


def test_gordon_scan_respects_t_range():
    rep = gordon_scan(Word("ab" * 30), 2, t_range=(10, 20))
    assert rep.t_range == (10, 20)
    assert rep.positions_scanned == 10
    assert rep.density == 1.0


def test_gordon_hit_storage_cap():
    rep = gordon_scan(Word("ab" * 600), 2, max_hits_stored=7)
    assert len(rep.hit_positions) == 7
    assert rep.hits > 7


# -- file round trip ----------------------------------------------------------------


def test_word_file_round_trip(tmp_path):
    w = circle_map_word("golden-1", "golden-1", (3, 120), symbols=("a", "b"))
    path = tmp_path / "word.txt"
    save_word(w, path)
    text = path.read_text()
    assert text.splitlines()[0].startswith("alphabet=")
    assert "origin=3" in text.splitlines()[0]
    back = load_word(path)
    assert back.symbols == w.symbols
    assert back.origin == 3


def test_word_file_rejects_foreign_symbols(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("alphabet=a,b origin=0\na b c\n")
    with pytest.raises(ValueError):
        load_word(path)
