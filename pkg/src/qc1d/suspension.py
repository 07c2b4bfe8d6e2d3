"""Suspensions: turn a symbolic word into a measure on the line.

Each symbol j carries a cell piece nu_j of length l_j.  Reading the word
left to right lays the cells end to end, with the cell of the symbol at
word position `origin` starting at 0.  Two flavours:

* suspend       - weighted point masses, one atom of weight c_j at each
                  cell's left endpoint (zero weights leave no atom);
* suspend_with_profiles - the full cell measures placed one after another.

When two or more distinct cells are multiples of Lebesgue measure (the zero
piece counts), distinct words can produce identical measures; both builders
then emit AmbiguousProfilesWarning rather than refuse, since exactly such
degenerate suspensions are wanted as counterexamples.
"""
from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .exact import Basis, ExactLength, as_length, unit_basis
from .flc import Decomposition, PieceSet
from .measures import EMPTY_CONTENT, MeasureWindow, Piece, PieceContent, concat
from .words import Word


class AmbiguousProfilesWarning(UserWarning):
    """Two or more cells are Lebesgue multiples: the suspension may not
    determine the word."""


def _default_length(content: PieceContent, basis: Basis) -> ExactLength:
    """Largest support point, or 1 when the support sits entirely at 0."""
    smax = content.support_max()
    if smax is None or smax.is_zero():
        return basis.one
    return smax


class SuspensionParams:
    """Cell pieces per symbol, plus the atom weights used by `suspend`.

    Construct from explicit pieces, or via `point_masses` (each symbol gets
    one atom at the cell's left end, unit cell length unless overridden) or
    `from_contents` (cell length defaults to the content's support radius).
    """

    def __init__(self, pieces: Mapping[str, Piece],
                 weights: Optional[Mapping[str, Union[int, Fraction]]] = None):
        if not pieces:
            raise ValueError("no cells")
        self.pieces: Dict[str, Piece] = {}
        basis = None
        for sym, p in pieces.items():
            if basis is None:
                basis = p.basis
            elif p.basis != basis:
                raise ValueError("cells over different bases")
            self.pieces[sym] = p.relabel(sym)
        assert basis is not None
        self.basis = basis
        if weights is None:
            weights = {}
            for sym, p in self.pieces.items():
                atoms = p.content.atoms
                weights[sym] = atoms[0][1] if atoms else Fraction(0)
        self.weights: Dict[str, Fraction] = {s: Fraction(w) for s, w in weights.items()}
        missing = set(self.pieces) - set(self.weights)
        if missing:
            raise ValueError(f"no weights for symbols {sorted(missing)}")

        lebesgue = [s for s, p in self.pieces.items() if p.is_lebesgue_multiple()[0]]
        self.ambiguous = len(lebesgue) >= 2
        self._lebesgue_symbols = tuple(sorted(lebesgue))

    @classmethod
    def point_masses(cls, weights: Mapping[str, Union[int, Fraction]],
                     lengths: Optional[Mapping[str, object]] = None,
                     basis: Optional[Basis] = None) -> "SuspensionParams":
        basis = basis or unit_basis()
        pieces = {}
        for sym, c in weights.items():
            l = as_length(lengths[sym], basis) if lengths else basis.one
            c = Fraction(c)
            content = PieceContent(atoms=[(basis.zero, c)], steps=[]) if c else EMPTY_CONTENT
            pieces[sym] = Piece(l, content, label=sym)
        return cls(pieces, weights)

    @classmethod
    def from_contents(cls, contents: Mapping[str, PieceContent], basis: Basis,
                      lengths: Optional[Mapping[str, object]] = None) -> "SuspensionParams":
        pieces = {}
        for sym, content in contents.items():
            if lengths and sym in lengths:
                l = as_length(lengths[sym], basis)
            else:
                l = _default_length(content, basis)
            pieces[sym] = Piece(l, content, label=sym)
        return cls(pieces)

    def length_of(self, sym: str) -> ExactLength:
        return self.pieces[sym].length

    def piece_set(self) -> PieceSet:
        return PieceSet(list(self.pieces.values()))

    def __repr__(self):
        return f"SuspensionParams({sorted(self.pieces)})"


def _check_symbols(word: Word, params: SuspensionParams):
    missing = set(word.symbols) - set(params.pieces)
    if missing:
        raise ValueError(f"word uses symbols without cells: {sorted(missing)}")


def cell_boundaries(word: Word, params: SuspensionParams) -> List[ExactLength]:
    """t_n for n = start..stop: cell n occupies [t_n, t_{n+1}), t_origin = 0."""
    _check_symbols(word, params)
    zero = params.basis.zero
    # walk right from the origin, then left
    fwd = [zero]
    for n in range(word.origin, word.stop):
        fwd.append(fwd[-1] + params.length_of(word[n]))
    bwd = []
    t = zero
    for n in range(word.origin - 1, word.start - 1, -1):
        t = t - params.length_of(word[n])
        bwd.append(t)
    bwd.reverse()
    return bwd + fwd


def _warn_if_ambiguous(params: SuspensionParams):
    if params.ambiguous:
        warnings.warn(
            f"cells {list(params._lebesgue_symbols)} are all Lebesgue multiples; "
            "the suspension may not determine the word",
            AmbiguousProfilesWarning,
            stacklevel=3,
        )


def _params_from_lengths(word: Word, lengths: Mapping[str, object],
                         basis: Optional[Basis]) -> SuspensionParams:
    """Numeric symbols carry their own weight: '2' weighs 2; '0' is silent."""
    weights: Dict[str, Fraction] = {}
    for sym in set(word.symbols) | set(lengths):
        try:
            weights[sym] = Fraction(sym)
        except ValueError:
            raise ValueError(
                f"symbol {sym!r} is not numeric; use SuspensionParams to "
                "assign weights explicitly"
            ) from None
    return SuspensionParams.point_masses(weights, lengths, basis)


def suspend(word: Word, params: Union[SuspensionParams, Mapping[str, object]],
            basis: Optional[Basis] = None) -> MeasureWindow:
    """Weighted atoms at the cell left endpoints; zero weights dropped.

    Pass SuspensionParams for full control, or a plain mapping symbol ->
    cell length, in which case each symbol must spell its own atom weight
    ('0', '1', '2', '1/2', ...).
    """
    if not isinstance(params, SuspensionParams):
        params = _params_from_lengths(word, params, basis)
    _check_symbols(word, params)
    _warn_if_ambiguous(params)
    grid = cell_boundaries(word, params)
    origin = grid[0]
    atoms = []
    for i, n in enumerate(range(word.start, word.stop)):
        c = params.weights[word[n]]
        if c != 0:
            atoms.append((grid[i] - origin, c))
    content = PieceContent(atoms=atoms, steps=[])
    return MeasureWindow(origin=origin, end=grid[-1], content=content)


def suspend_with_profiles(word: Word, params: SuspensionParams) -> Decomposition:
    """Lay the full cell pieces end to end; returns the tiling, whose
    .window attribute holds the assembled measure."""
    _check_symbols(word, params)
    _warn_if_ambiguous(params)
    if not len(word):
        raise ValueError("empty word")
    grid = cell_boundaries(word, params)
    labels = [word[n] for n in range(word.start, word.stop)]
    glued = concat([params.pieces[lab] for lab in labels])
    window = MeasureWindow(origin=grid[0], end=grid[-1], content=glued.content)
    return Decomposition(window, params.piece_set(), grid[0], labels)
