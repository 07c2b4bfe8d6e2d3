"""Trace recursion for Fibonacci-concatenated transfer products.

Words w_0 = b, w_1 = a, w_{k+1} = w_k w_{k-1} give period matrices
M_{k+1} = M_{k-1} M_k (the particle crosses w_k first).  Their half-traces
x_k = tr(M_k)/2 obey

    x_{k+1} = 2 x_k x_{k-1} - x_{k-2},

with the quantity x_{k+1}^2 + x_k^2 + x_{k-1}^2 - 2 x_{k+1} x_k x_{k-1} - 1
independent of k.  Both are computed here from the matrices themselves, so
tests can confirm the recursion instead of assuming it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .measures import Piece
from .transfer import AtomFactor, ScaledMat2, SegmentFactor, compile_factors, propagate


@dataclass(frozen=True)
class TraceSequence:
    energy: float
    half_traces: Tuple[float, ...]          # x_0 .. x_n, +-inf past float range
    signs: Tuple[float, ...]
    log_abs: Tuple[float, ...]              # log|x_k|, -inf at a zero trace
    recursion_residuals: Tuple[Optional[float], ...]  # for k = 2 .. n-1
    invariants: Tuple[Optional[float], ...]            # for k = 1 .. n-1
    effective_n: int

    @property
    def n(self) -> int:
        return len(self.half_traces) - 1


def fibonacci_trace_sequence(cell_a: Union[Piece, tuple], cell_b: Union[Piece, tuple],
                             energy: float, n: int) -> TraceSequence:
    """Half-traces of orders 0..n at one energy, with recursion residuals
    and the conserved quantity evaluated from the matrix products."""
    if n < 2:
        raise ValueError("need n >= 2")
    fa = cell_a if isinstance(cell_a, tuple) else compile_factors(cell_a)
    fb = cell_b if isinstance(cell_b, tuple) else compile_factors(cell_b)
    mats: List[ScaledMat2] = [propagate(fb, energy), propagate(fa, energy)]
    while len(mats) <= n:
        mats.append(mats[-2] @ mats[-1])

    xs: List[float] = []
    signs: List[float] = []
    logs: List[float] = []
    for M in mats:
        s, lg = M.half_trace_log()
        signs.append(s)
        logs.append(lg)
        if lg == -math.inf:
            xs.append(0.0)
        elif lg > 709.0:
            xs.append(math.copysign(math.inf, s))
        else:
            xs.append(s * math.exp(lg))

    effective_n = n
    for k, x in enumerate(xs):
        if not math.isfinite(x):
            effective_n = k - 1
            break

    residuals: List[Optional[float]] = []
    for k in range(2, n):
        vals = xs[k - 2:k + 2]
        if all(math.isfinite(v) for v in vals):
            pred = 2.0 * xs[k] * xs[k - 1] - xs[k - 2]
            if math.isfinite(pred):
                denom = max(1.0, abs(xs[k + 1]), abs(pred))
                residuals.append(abs(xs[k + 1] - pred) / denom)
                continue
        residuals.append(None)

    invariants: List[Optional[float]] = []
    for k in range(1, n):
        trip = xs[k - 1:k + 2]
        if all(math.isfinite(v) and abs(v) < 1e100 for v in trip):
            a, b, c = trip
            invariants.append(a * a + b * b + c * c - 2.0 * a * b * c - 1.0)
        else:
            invariants.append(None)

    return TraceSequence(
        energy=energy,
        half_traces=tuple(xs),
        signs=tuple(signs),
        log_abs=tuple(logs),
        recursion_residuals=tuple(residuals),
        invariants=tuple(invariants),
        effective_n=effective_n,
    )


def fibonacci_kp_trace_sequence(energy: float, c: float, n: int) -> TraceSequence:
    """Trace sequence of the canonical Fibonacci comb: atom weight c in both
    cells, cell lengths 1 ('a') and the golden ratio ('b')."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    cell_a = (AtomFactor(float(c)), SegmentFactor(1.0, 0.0))
    cell_b = (AtomFactor(float(c)), SegmentFactor(phi, 0.0))
    return fibonacci_trace_sequence(cell_a, cell_b, energy, n)
