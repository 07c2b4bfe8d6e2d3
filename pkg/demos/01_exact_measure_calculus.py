"""
Exact pieces, windows, and pattern search
=========================================

A measure on the line is stored as a finite recipe: point masses (atoms)
and unit steps of an increasing staircase, all placed at positions that are
rational combinations of basis lengths.  Nothing here is a float, so
concatenation, restriction and pattern search are decidable -- two windows
either agree exactly or they do not.
"""
from fractions import Fraction

from qc1d import (
    EMPTY_CONTENT,
    MeasureWindow,
    Piece,
    PieceContent,
    as_length,
    concat,
    golden_basis,
    occurrences,
    restrict,
)


def as_window(piece):
    """View a piece as a window anchored at 0."""
    return MeasureWindow(piece.basis.zero, piece.length, piece.content)

# Work over lengths of the form p + q*phi with p, q rational.
basis = golden_basis()
one = as_length(1, basis)
phi = as_length("golden", basis)
print("basis lengths:", list(basis.names))
print("phi as float :", float(phi))

# A piece is a length together with the measure it carries.  This one has
# an atom of weight 3 at its left end plus a density-1 Lebesgue block on
# its right half (steps are (start, end, level) triples).
cell_a = Piece(one, PieceContent(atoms=((as_length(0, basis), Fraction(3)),),
                                 steps=((as_length("1/2", basis), one,
                                         Fraction(1)),)),
               label="a")
# The second cell is phi long and carries only the atom.
cell_b = Piece(phi, PieceContent(atoms=((as_length(0, basis), Fraction(3)),)),
               label="b")

# Lay out the Fibonacci-like pattern a b a a b and look at the result.
w = as_window(concat([cell_a, cell_b, cell_a, cell_a, cell_b]))
print("\nwindow span  :", w.span, "=", float(w.span))
print("atom count   :", len(w.content.atoms))
print("step count   :", len(w.content.steps))

# Restriction keeps the measure on a subinterval, re-anchored at its own
# origin.  Restricting to [0, 1) recovers cell a exactly (zero tolerance).
first = restrict(w, w.origin, one)
print("\nrestrict to [0,1) equals cell a:",
      first.content == cell_a.content and first.length == cell_a.length)

# Pattern search: where inside w does a translated copy of cell b sit?
occ = occurrences(w, cell_b)
print("\ncopies of cell b start at:", [str(x) for x in occ.points])

# A featureless probe occurs on a continuum of positions, so the result is
# reported as intervals instead of points.
silent = Piece(as_length("1/4", basis), EMPTY_CONTENT)
occ2 = occurrences(w, silent)
print("featureless probe -> point hits:", len(occ2.points),
      "and", len(occ2.intervals), "interval(s) of sliding positions")
iv = occ2.intervals[0]
lb = "[" if iv.lo_closed else "("
rb = "]" if iv.hi_closed else ")"
print("first interval:", f"{lb}{iv.lo}, {iv.hi}{rb}",
      "(open at 0: the atom there blocks that exact offset)")

# Exact equality makes periodicity questions sharp: shifting the two-cell
# pattern (a b) by its own span reproduces the content on the overlap.
period = as_window(concat([cell_a, cell_b] * 4))
shift = one + phi
overlap = period.span - shift
left = restrict(period, period.origin, overlap)
right = restrict(period, period.origin + shift, overlap)
print("\n(a b)^4 is (1+phi)-periodic on the overlap:",
      left.content == right.content)
