"""Floquet band structure of periodic measure potentials.

For one period piece the discriminant D(E) is the trace of the period
transfer matrix; the spectrum is {E : |D(E)| <= 2}.  Bands are located by
scanning D on a grid and bisecting every crossing of +2 and -2 to the
requested tolerance.  A band cut off by the scan boundary is reported with
a clipped flag instead of being silently truncated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .measures import Piece
from .transfer import compile_factors, propagate_grid, transfer_matrix


def floquet_discriminant(period: Piece, energies) -> np.ndarray:
    """D(E) = trace of the transfer matrix across one period."""
    factors = compile_factors(period)
    E = np.atleast_1d(np.asarray(energies, dtype=np.float64))
    return propagate_grid(factors, E).trace()


def kronig_penney_discriminant(energies, c: float, spacing: float = 1.0) -> np.ndarray:
    """Closed form for one atom of weight c per period of free length l:
    D(E) = 2 cos(k l) + c sin(k l) / k with k = sqrt(E) (analytic
    continuation through E <= 0)."""
    E = np.atleast_1d(np.asarray(energies, dtype=np.float64))
    l = spacing
    out = np.empty_like(E)
    pos = E > 0
    k = np.sqrt(E[pos])
    out[pos] = 2.0 * np.cos(k * l) + c * np.sin(k * l) / k
    neg = E < 0
    q = np.sqrt(-E[neg])
    out[neg] = 2.0 * np.cosh(q * l) + c * np.sinh(q * l) / q
    zero = E == 0
    out[zero] = 2.0 + c * l
    return out


@dataclass(frozen=True)
class Band:
    lo: float
    hi: float
    lo_clipped: bool = False
    hi_clipped: bool = False

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class BandReport:
    e_min: float
    e_max: float
    bands: Tuple[Band, ...]
    grid_points: int
    tol: float

    @property
    def total_measure(self) -> float:
        return sum(b.width for b in self.bands)

    @property
    def any_clipped(self) -> bool:
        return any(b.lo_clipped or b.hi_clipped for b in self.bands)


def _bisect_root(f: Callable[[float], float], lo: float, hi: float,
                 f_lo: float, f_hi: float, tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0) != (f_mid < 0):
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def floquet_bands(period: Piece, e_min: float, e_max: float,
                  grid_points: int = 4000, tol: float = 1e-8) -> BandReport:
    """Bands of the periodic operator inside [e_min, e_max].

    The grid must resolve every band and gap: a feature narrower than the
    grid step can be missed entirely.  Crossings of D = +-2 found on the
    grid are bisected to tol; intervals between consecutive crossings are
    classified by the midpoint value of |D|.
    """
    if e_max <= e_min:
        raise ValueError("empty energy range")
    if grid_points < 2:
        raise ValueError("need at least 2 grid points")
    factors = compile_factors(period)
    E = np.linspace(e_min, e_max, grid_points)
    D = propagate_grid(factors, E).trace()

    def d_scalar(e: float) -> float:
        M = transfer_matrix(factors, e)
        return float(M[0, 0] + M[1, 1])

    cuts: List[float] = [e_min]
    for level in (2.0, -2.0):
        g = D - level
        finite = np.isfinite(g)
        for i in range(len(E) - 1):
            if not (finite[i] and finite[i + 1]):
                # deep in a gap the trace overflows; there is no crossing in
                # a cell whose finite endpoint is already far outside [-2, 2]
                if finite[i] and abs(D[i]) <= 2.0 or finite[i + 1] and abs(D[i + 1]) <= 2.0:
                    raise ArithmeticError(
                        "discriminant overflow next to a band: grid too coarse"
                    )
                continue
            gi, gj = float(g[i]), float(g[i + 1])
            if gi == 0.0:
                cuts.append(float(E[i]))
                continue
            if (gi < 0) != (gj < 0):
                cuts.append(_bisect_root(lambda e: d_scalar(e) - level,
                                         float(E[i]), float(E[i + 1]), gi, gj, tol))
    cuts.append(e_max)
    cuts = sorted(set(cuts))

    bands: List[Band] = []
    for lo, hi in zip(cuts, cuts[1:]):
        if hi - lo <= tol * 0.5:
            continue
        mid = 0.5 * (lo + hi)
        d_mid = d_scalar(mid)
        if abs(d_mid) <= 2.0:
            bands.append(Band(
                lo, hi,
                lo_clipped=(lo == e_min and abs(d_scalar(e_min)) < 2.0),
                hi_clipped=(hi == e_max and abs(d_scalar(e_max)) < 2.0),
            ))
    # merge adjacent bands separated only by a tangential touch point
    merged: List[Band] = []
    for band in bands:
        if merged and band.lo - merged[-1].hi <= tol:
            prev = merged.pop()
            band = Band(prev.lo, band.hi, prev.lo_clipped, band.hi_clipped)
        merged.append(band)
    return BandReport(e_min, e_max, tuple(merged), grid_points, tol)


@dataclass(frozen=True)
class SpectralScan:
    """Raw discriminant scan, ready for CSV export."""

    energies: np.ndarray
    trace: np.ndarray
    log_norm: np.ndarray
    gamma: np.ndarray
    in_band: np.ndarray

    def rows(self):
        for i in range(len(self.energies)):
            yield (float(self.energies[i]), float(self.trace[i]),
                   float(self.log_norm[i]), float(self.gamma[i]),
                   int(self.in_band[i]))


def spectral_scan(period: Piece, energies) -> SpectralScan:
    factors = compile_factors(period)
    E = np.atleast_1d(np.asarray(energies, dtype=np.float64))
    G = propagate_grid(factors, E)
    tr = G.trace()
    ln = G.frobenius_log()
    span = float(period.length.value)
    gamma = ln / span
    in_band = np.isfinite(tr) & (np.abs(tr) <= 2.0)
    return SpectralScan(E, tr, ln, gamma, in_band)
