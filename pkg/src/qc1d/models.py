"""Ready-made potentials: lattice comb, Fibonacci combs, and the
two-silent-cell construction that defeats the naive determinism check.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple, Union

from .exact import Basis, as_length, golden_basis, unit_basis
from .flc import Decomposition, PieceSet
from .measures import EMPTY_CONTENT, MeasureWindow, Piece, PieceContent, concat
from .suspension import SuspensionParams, suspend_with_profiles
from .words import Word, substitution_word

FIBONACCI_RULES = {"a": "ab", "b": "a"}


def fibonacci_word(order: int, max_length: Optional[int] = None) -> Word:
    """Order-n word: w_1 = 'a', w_2 = 'ab', w_n = w_{n-1} w_{n-2}.

    |w_n| runs 1, 2, 3, 5, 8, ... (order 10 has 89 symbols).  Equivalent to
    n-1 rounds of a -> ab, b -> a from seed 'a'.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    return substitution_word(FIBONACCI_RULES, "a", order - 1, max_length)


def comb_cell(weight: Union[int, Fraction], length=1,
              basis: Optional[Basis] = None, label: Optional[str] = None) -> Piece:
    """One atom of the given weight at the left end of an otherwise silent
    cell."""
    basis = basis or unit_basis()
    l = as_length(length, basis)
    w = Fraction(weight)
    content = PieceContent(atoms=[(basis.zero, w)], steps=[]) if w else EMPTY_CONTENT
    return Piece(l, content, label=label)


def lattice_comb(weight: Union[int, Fraction], n_cells: int,
                 spacing=1) -> Piece:
    """n_cells identical comb cells glued together (one full period is the
    single cell; this is the n-cell window)."""
    cell = comb_cell(weight, spacing, label="c")
    return concat([cell] * n_cells, label=None)


def comb_period_piece(weight: Union[int, Fraction], spacing=1) -> Piece:
    return comb_cell(weight, spacing, label="c")


def fibonacci_comb_params(weight_a: Union[int, Fraction],
                          weight_b: Union[int, Fraction],
                          length_a=1, length_b=1,
                          basis: Optional[Basis] = None) -> SuspensionParams:
    """Comb cells for the two Fibonacci symbols."""
    basis = basis or unit_basis()
    return SuspensionParams({
        "a": comb_cell(weight_a, length_a, basis, "a"),
        "b": comb_cell(weight_b, length_b, basis, "b"),
    })


def fibonacci_kp_params(weight: Union[int, Fraction]) -> SuspensionParams:
    """The canonical Fibonacci comb: the same atom weight in both cells,
    cell lengths 1 for 'a' and the golden ratio for 'b'.  Aperiodicity
    lives entirely in the spacing."""
    basis = golden_basis()
    phi = basis.length(0, 1)
    return SuspensionParams({
        "a": comb_cell(weight, 1, basis, "a"),
        "b": comb_cell(weight, phi, basis, "b"),
    })


def fibonacci_kp_window(weight, order: int,
                        max_length: Optional[int] = None) -> Decomposition:
    """Suspension of the order-n Fibonacci word over the canonical comb
    cells; .window holds the measure, the decomposition the exact grid."""
    word = fibonacci_word(order, max_length)
    return suspend_with_profiles(word, fibonacci_kp_params(weight))


def fibonacci_kp_period_piece(weight, order: int) -> Piece:
    """One period of the order-n periodic approximant, as a single piece."""
    dec = fibonacci_kp_window(weight, order)
    return dec.window.as_piece().relabel(f"fib{order}")


def silent_two_cell_params(length_short=1, length_long=2,
                           basis: Optional[Basis] = None) -> SuspensionParams:
    """Two cells of different lengths carrying no measure at all.

    Any word suspended over these cells produces the zero measure, so the
    measure retains no trace of the word: the canonical source of windows
    where cell lengths are not determined by past and future mass.
    """
    basis = basis or unit_basis()
    ls = as_length(length_short, basis)
    ll = as_length(length_long, basis)
    if not ls < ll:
        raise ValueError("short cell must be shorter")
    return SuspensionParams({
        "s": Piece(ls, EMPTY_CONTENT, label="s"),
        "l": Piece(ll, EMPTY_CONTENT, label="l"),
    })


def silent_block_word(k: int, n_blocks: int) -> Word:
    """(s^k l) repeated: k short cells then one long cell, n_blocks times."""
    if k < 1 or n_blocks < 1:
        raise ValueError("k and n_blocks must be positive")
    return Word(("s" * k + "l") * n_blocks, 0)


def mixed_silent_word(ks: Tuple[int, ...]) -> Word:
    """s^{k_0} l s^{k_1} l ... for the given run lengths."""
    if not ks or any(k < 1 for k in ks):
        raise ValueError("run lengths must be positive")
    return Word("".join("s" * k + "l" for k in ks), 0)
