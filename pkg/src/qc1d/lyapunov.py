"""Finite-window growth rates of transfer products.

gamma(E) = log ||M_window(E)|| / window length.  For a genuinely periodic
potential the product over n periods collapses to a matrix power, so mid-
band decay of gamma toward 0 can be checked at lengths like 1e5 in a few
squarings instead of 1e5 multiplications.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .measures import MeasureWindow, Piece
from .transfer import (
    ScaledMat2,
    compile_factors,
    factor_span,
    matrix_power,
    propagate,
    propagate_grid,
)


def lyapunov_window(source: Union[Piece, MeasureWindow, tuple], energies) -> np.ndarray:
    """gamma(E) over the energy grid for one window."""
    factors = source if isinstance(source, tuple) else compile_factors(source)
    span = factor_span(factors)
    if span <= 0:
        raise ValueError("window has no extent")
    E = np.atleast_1d(np.asarray(energies, dtype=np.float64))
    G = propagate_grid(factors, E)
    return G.frobenius_log() / span


def lyapunov_periodic(period: Union[Piece, tuple], energy: float, n_periods: int) -> float:
    """gamma at one energy for n_periods repetitions, via binary powering."""
    factors = period if isinstance(period, tuple) else compile_factors(period)
    span = factor_span(factors)
    if span <= 0 or n_periods <= 0:
        raise ValueError("need a positive period and repetition count")
    M = propagate(factors, energy)
    P = matrix_power(M, n_periods)
    return P.frobenius_log() / (span * n_periods)


@dataclass(frozen=True)
class LyapunovSample:
    """gamma over an energy grid for several sampled windows."""

    energies: np.ndarray
    gamma_mean: np.ndarray
    gamma_stderr: np.ndarray
    n_windows: int
    span: float


def lyapunov_samples(window_supplier: Callable[[int], Union[Piece, MeasureWindow]],
                     energies, n_windows: int) -> LyapunovSample:
    """Mean and standard error of gamma over windows produced by the
    supplier (called with 0..n_windows-1)."""
    if n_windows <= 0:
        raise ValueError("need at least one window")
    E = np.atleast_1d(np.asarray(energies, dtype=np.float64))
    rows = np.empty((n_windows, E.shape[0]))
    span_total = 0.0
    for i in range(n_windows):
        src = window_supplier(i)
        factors = compile_factors(src)
        span = factor_span(factors)
        span_total += span
        rows[i] = propagate_grid(factors, E).frobenius_log() / span
    mean = rows.mean(axis=0)
    if n_windows > 1:
        stderr = rows.std(axis=0, ddof=1) / math.sqrt(n_windows)
    else:
        stderr = np.zeros_like(mean)
    return LyapunovSample(E, mean, stderr, n_windows, span_total / n_windows)
