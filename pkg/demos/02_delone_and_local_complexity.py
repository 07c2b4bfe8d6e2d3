"""
Delone combs, window decompositions, and a counterexample
=========================================================

An atom train on the line is Delone when its gaps are bounded below and
above.  Decorating each point with a bump profile gives a measure; this
script decomposes such a measure back into its cells, checks that pasts
of a fixed horizon determine the next cell (the finite-decomposition
property), and then shows the property fail on a measure that carries no
mass at all -- cell boundaries of a silent tiling leave no trace.
"""
import warnings
from fractions import Fraction

from qc1d import (
    ColoredDeloneSet,
    Piece,
    PieceContent,
    analyze_point_set,
    as_length,
    build_delone_decomposition,
    check_sfdp,
    check_udp,
    golden_basis,
    mixed_silent_word,
    silent_two_cell_params,
    suspend_with_profiles,
)

basis = golden_basis()

# --- a quasiperiodic point set with two gap lengths -----------------------
# Walk the golden rotation and emit gap 1 or phi accordingly.
points = [as_length(0, basis)]
frac = Fraction(0)
for _ in range(40):
    frac += Fraction(13, 21)  # rational stand-in for 1/phi, good to ~1e-3
    if frac >= 1:
        frac -= 1
        gap = as_length(1, basis)
    else:
        gap = as_length("golden", basis)
    points.append(points[-1] + gap)
D = ColoredDeloneSet.uncolored(tuple(points))

report = analyze_point_set(D, r=0.5, R=1.7, L=2.0)
print("Delone with gaps in [2r, R] =", [1.0, 1.7], ":", report.is_delone)
print("min / max gap:", report.min_gap, "/", round(report.max_gap, 6))
print("distinct patches of radius 2.0:", report.patch_count)

# Decorate every point with the same tent profile of support 1/2.
half = as_length("1/2", basis)
tent = Piece(half, PieceContent(steps=((as_length(0, basis),
                                        as_length("1/4", basis), Fraction(2)),
                                       (as_length("1/4", basis), half,
                                        Fraction(1)))))
dec = build_delone_decomposition(D, tent)
print("\ndecomposition recovered", len(dec), "cells;",
      "round trip ok:", dec.verify_round_trip())

# Past-determines-next-cell: with horizon ell beyond the largest gap plus
# the profile support, no two positions in the window disagree.  ell stays
# exact (phi + 1/2); a float here would hit the comparison tie guard.
ell = as_length("golden", basis) + half
cex = check_sfdp(dec.window, dec, ell)
print(f"finite-decomposition check at ell = {float(ell):.3f}:",
      "no counterexample" if cex is None else "FAILS")

# --- the silent tiling ----------------------------------------------------
# Two cell lengths, zero measure on both.  The suspension of any word is
# the zero measure, so the measure cannot remember where cells ended.
word = mixed_silent_word((2, 3, 2, 2, 3, 2, 3, 3, 2, 2))
with warnings.catch_warnings():
    warnings.simplefilter("ignore")  # profiles are ambiguous by design here
    silent = suspend_with_profiles(word, silent_two_cell_params())

for ell_val in (2, 4, 8):
    cex = check_sfdp(silent.window, silent, ell_val)
    print(f"silent tiling, ell = {ell_val}:",
          f"cells '{cex.label_y}' vs '{cex.label_z}' after identical pasts"
          if cex else "determined")

# Unique decomposition fails too: the empty window re-tiles many ways.
print("unique cell placement on the silent window:",
      check_udp(silent.window, silent.piece_set, 2))
