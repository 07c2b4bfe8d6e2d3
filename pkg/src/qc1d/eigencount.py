"""Dirichlet eigenvalue counting by oscillation.

The number of Dirichlet eigenvalues below E on a window equals the number
of interior zeros of the solution with u = 0, u' = 1 at the left edge.  On
a segment where E exceeds the density, (k u, u') is an exact rotation and
the zeros are the multiples of pi swept by the phase; on non-oscillatory
segments the solution crosses zero at most once, caught by a sign change.
Point masses move u' only and never create zeros.
"""
from __future__ import annotations

import math
from typing import Tuple, Union

from .measures import MeasureWindow, Piece
from .transfer import AtomFactor, SegmentFactor, compile_factors, factor_matrix


def _zeros_oscillatory(u: float, up: float, k: float, l: float) -> int:
    """Multiples of pi crossed by the phase of (k u, u') over (0, l]."""
    phi0 = math.atan2(k * u, up)
    phi1 = phi0 + k * l
    return math.floor(phi1 / math.pi) - math.floor(phi0 / math.pi)


def dirichlet_eigencount(source: Union[Piece, MeasureWindow, tuple], energy: float) -> int:
    """Eigenvalues of the Dirichlet problem on the window strictly below E.

    Counts zeros of the E-solution in (left edge, right edge]; when E is
    itself a Dirichlet eigenvalue the right-edge zero is included, i.e. the
    count is then #\\{eigenvalues < E\\} + 1 (a measure-zero event for
    floating-point energies).
    """
    factors = source if isinstance(source, tuple) else compile_factors(source)
    u, up = 0.0, 1.0
    count = 0
    for f in factors:
        if isinstance(f, AtomFactor):
            up = up + f.weight * u
            continue
        k2 = energy - f.density
        if k2 > 0 and k2 * f.length * f.length > 1e-12:
            k = math.sqrt(k2)
            count += _zeros_oscillatory(u, up, k, f.length)
            M = factor_matrix(f, energy)
            u, up = (float(M[0, 0]) * u + float(M[0, 1]) * up,
                     float(M[1, 0]) * u + float(M[1, 1]) * up)
        else:
            # convex/linear regime: at most one zero, visible as a sign change
            M = factor_matrix(f, energy)
            u_new = float(M[0, 0]) * u + float(M[0, 1]) * up
            up_new = float(M[1, 0]) * u + float(M[1, 1]) * up
            if (u < 0 < u_new) or (u_new < 0 < u) or (u != 0.0 and u_new == 0.0):
                count += 1
            u, up = u_new, up_new
        # keep magnitudes in range without touching signs or the phase
        scale = max(abs(u), abs(up))
        if scale > 1e200:
            u /= scale
            up /= scale
    return count
