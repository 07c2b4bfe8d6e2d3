"""Transfer matrices for -u'' + mu u = E u with measure potentials.

A window's content compiles to an energy-independent factor list: constant-
density segments and point interactions.  Across a segment of length l and
density v the solution vector (u, u') moves by

    [[ C, S ], [ -(E-v) S, C ]],   C, S = cos/sinc or cosh/sinhc of sqrt|E-v| l,

and a point mass of weight c kicks the derivative: u' -> u' + c u.

Scalar propagation runs in extended precision (the determinant of every
factor is exactly 1 analytically; extended precision keeps the numerical
drift per factor near machine level).  Grid propagation evaluates whole
energy arrays per factor in float64 with per-factor rescaling, tracking the
scale in log form so products over 1e5 factors neither overflow nor lose
the growth rate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .measures import MeasureWindow, Piece, PieceContent

LD = np.longdouble

# above this, cosh/sinh of the argument are pulled out as an explicit
# exp-scale so a single hyperbolic factor cannot overflow
_HYP_CAP = 30.0
# |E - v| * l^2 below this uses the Taylor forms of cos/sinc, which are
# exact through O(z^3) and free of the 0/0 at E == v
_SERIES_CUT = 1e-8


@dataclass(frozen=True)
class SegmentFactor:
    length: float
    density: float


@dataclass(frozen=True)
class AtomFactor:
    weight: float


Factor = Union[SegmentFactor, AtomFactor]


def compile_factors(source: Union[Piece, MeasureWindow, PieceContent],
                    span=None) -> Tuple[Factor, ...]:
    """Ordered factor list covering [0, span) of the content.

    Left to right: the atom at a breakpoint acts before the segment that
    follows it.  Atoms at the right edge are outside the half-open span by
    construction and never appear.
    """
    if isinstance(source, MeasureWindow):
        piece = source.as_piece()
        content, total = piece.content, piece.length
    elif isinstance(source, Piece):
        content, total = source.content, source.length
    else:
        if span is None:
            raise ValueError("raw content needs an explicit span")
        content, total = source, span

    runs = content.density_runs(total, total.basis.zero)
    atoms: dict = {}
    for o, w in content.atoms:
        pos = float(o.value)
        atoms[pos] = atoms.get(pos, 0.0) + float(w)
    factors: List[Factor] = []
    for start, end, level in runs:
        s = float(start.value)
        e = float(end.value)
        # an atom splits the constant-density stretch it sits on
        cuts = [s] + [p for p in sorted(atoms) if s < p < e] + [e]
        for u, v in zip(cuts, cuts[1:]):
            a = atoms.pop(u, None)
            if a is not None:
                factors.append(AtomFactor(a))
            if v > u:
                factors.append(SegmentFactor(v - u, float(level)))
    for pos in sorted(atoms):
        raise AssertionError(f"atom at {pos} outside every density run")
    return tuple(factors)


def factor_span(factors: Iterable[Factor]) -> float:
    return sum(f.length for f in factors if isinstance(f, SegmentFactor))


# -- scalar extended-precision path --------------------------------------------


def _segment_entries(k2: LD, l: LD) -> Tuple[LD, LD]:
    """C and S for one segment; works for either sign of E - v."""
    z = k2 * l * l
    if abs(float(z)) < _SERIES_CUT:
        C = 1 - z / 2 + z * z / 24 - z * z * z / 720
        S = l * (1 - z / 6 + z * z / 120 - z * z * z / 5040)
        return C, S
    if z > 0:
        rt = np.sqrt(k2)
        return np.cos(rt * l), np.sin(rt * l) / rt
    rt = np.sqrt(-k2)
    return np.cosh(rt * l), np.sinh(rt * l) / rt


def factor_matrix(factor: Factor, energy: float) -> np.ndarray:
    """Single 2x2 factor in extended precision."""
    if isinstance(factor, AtomFactor):
        return np.array([[1, 0], [factor.weight, 1]], dtype=LD)
    k2 = LD(energy) - LD(factor.density)
    C, S = _segment_entries(k2, LD(factor.length))
    return np.array([[C, S], [-k2 * S, C]], dtype=LD)


def transfer_matrix(source, energy: float, span=None) -> np.ndarray:
    """Product of all factors of the content, rightmost factor first applied.

    Extended precision throughout; suitable for windows up to a few
    thousand factors (no rescaling — entries may overflow on long windows
    deep in a spectral gap; use propagate for those).  The determinant is
    re-checked against its analytic value 1 and drift beyond 1e-12 per
    factor raises rather than being renormalized away.
    """
    factors = source if isinstance(source, tuple) else compile_factors(source, span)
    M = np.eye(2, dtype=LD)
    with np.errstate(over="ignore", invalid="ignore"):
        for f in factors:
            M = factor_matrix(f, energy) @ M
    if factors:
        if not np.isfinite(M.astype(np.float64)).all():
            raise ArithmeticError(
                "transfer product overflowed; use propagate() for long windows"
            )
        det = float(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])
        scale = max(1.0, float(np.abs(M.astype(np.float64)).max()) ** 2)
        if abs(det - 1.0) > 1e-12 * len(factors) * scale:
            raise ArithmeticError(f"determinant drifted to {det!r}")
    return M


@dataclass
class ScaledMat2:
    """M together with log_scale; the true matrix is exp(log_scale) * M."""

    mat: np.ndarray
    log_scale: float

    @classmethod
    def identity(cls) -> "ScaledMat2":
        return cls(np.eye(2, dtype=LD), 0.0)

    def absorb(self) -> "ScaledMat2":
        n = float(np.sqrt((self.mat.astype(np.float64) ** 2).sum()))
        if n == 0.0 or not math.isfinite(n):
            raise ArithmeticError("degenerate transfer product")
        return ScaledMat2(self.mat / LD(n), self.log_scale + math.log(n))

    def left_multiply(self, F: np.ndarray) -> "ScaledMat2":
        return ScaledMat2(F @ self.mat, self.log_scale).absorb()

    def __matmul__(self, other: "ScaledMat2") -> "ScaledMat2":
        return ScaledMat2(self.mat @ other.mat,
                          self.log_scale + other.log_scale).absorb()

    def trace(self) -> float:
        """True trace; inf when the scale is beyond float range."""
        t = float(self.mat[0, 0] + self.mat[1, 1])
        if self.log_scale > 700:
            return math.inf if t > 0 else (-math.inf if t < 0 else 0.0)
        return t * math.exp(self.log_scale)

    def half_trace_log(self) -> Tuple[float, float]:
        """(sign, log|trace/2|); usable at any scale."""
        t = float(self.mat[0, 0] + self.mat[1, 1])
        if t == 0.0:
            return 0.0, -math.inf
        return math.copysign(1.0, t), math.log(abs(t) / 2) + self.log_scale

    def frobenius_log(self) -> float:
        n = float(np.sqrt((self.mat.astype(np.float64) ** 2).sum()))
        return math.log(n) + self.log_scale

    def det_drift(self) -> float:
        """|det of the true matrix - 1| (the analytic determinant is 1)."""
        d = float(self.mat[0, 0] * self.mat[1, 1] - self.mat[0, 1] * self.mat[1, 0])
        if d <= 0.0:
            return math.inf if d < 0.0 else 1.0
        return abs(math.expm1(math.log(d) + 2.0 * self.log_scale))


def propagate(source, energy: float, span=None) -> ScaledMat2:
    """Full-window product with per-factor rescaling; never overflows."""
    factors = source if isinstance(source, tuple) else compile_factors(source, span)
    acc = ScaledMat2.identity()
    for f in factors:
        # a single hyperbolic stretch can overflow on its own: cut it so each
        # chunk grows by at most e^200 and let the rescaling soak it up
        if isinstance(f, SegmentFactor):
            rate = math.sqrt(max(f.density - energy, 0.0))
            pieces = max(1, math.ceil(rate * f.length / 200.0))
            if pieces > 1:
                chunk = SegmentFactor(f.length / pieces, f.density)
                for _ in range(pieces):
                    acc = acc.left_multiply(factor_matrix(chunk, energy))
                continue
        acc = acc.left_multiply(factor_matrix(f, energy))
    return acc


def matrix_power(base: ScaledMat2, n: int) -> ScaledMat2:
    """base**n by binary powering (n >= 0)."""
    if n < 0:
        raise ValueError("negative powers not supported")
    result = ScaledMat2.identity()
    sq = base
    while n:
        if n & 1:
            result = sq @ result
        n >>= 1
        if n:
            sq = sq @ sq
    return result


# -- vectorized grid path -------------------------------------------------------


@dataclass
class GridTransfer:
    """Entrywise transfer products over an energy grid.

    a, b, c, d are the rescaled matrix entries; log_scale holds the factored
    out magnitude, so the true matrix at grid point i is
    exp(log_scale[i]) * [[a[i], b[i]], [c[i], d[i]]].
    """

    energies: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    log_scale: np.ndarray

    def trace(self) -> np.ndarray:
        """True trace; overflows to +-inf where the scale is huge."""
        with np.errstate(over="ignore", invalid="ignore"):
            return (self.a + self.d) * np.exp(self.log_scale)

    def frobenius_log(self) -> np.ndarray:
        return 0.5 * np.log(self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2) + self.log_scale


def propagate_grid(factors: Sequence[Factor], energies: np.ndarray) -> GridTransfer:
    """Apply every factor across the whole energy grid, float64, per-factor
    rescaling by the Frobenius norm."""
    E = np.asarray(energies, dtype=np.float64)
    n = E.shape[0]
    a = np.ones(n)
    b = np.zeros(n)
    c = np.zeros(n)
    d = np.ones(n)
    log_scale = np.zeros(n)

    for f in factors:
        if isinstance(f, AtomFactor):
            c = c + f.weight * a
            d = d + f.weight * b
        else:
            l = f.length
            k2 = E - f.density
            z = k2 * (l * l)
            small = np.abs(z) < _SERIES_CUT
            absk2 = np.abs(k2)
            with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
                rt = np.sqrt(absk2) * l
                rt_c = np.minimum(rt, _HYP_CAP)
                pos = k2 > 0
                C = np.where(pos, np.cos(rt), np.cosh(rt_c))
                S_core = np.where(pos, np.sin(rt), np.sinh(rt_c))
                S = np.where(absk2 > 0, S_core / np.where(absk2 > 0, np.sqrt(absk2), 1.0), l)
                # series branch overrides both, removing the 0/0 at k2 == 0
                Cs = 1 - z / 2 + z * z / 24
                Ss = l * (1 - z / 6 + z * z / 120)
                C = np.where(small, Cs, C)
                S = np.where(small, Ss, S)
                extra = np.where(pos | small, 0.0, rt - rt_c)
            m21 = -k2 * S
            a, c = C * a + S * c, m21 * a + C * c
            b, d = C * b + S * d, m21 * b + C * d
            log_scale = log_scale + extra
        norm = np.sqrt(a * a + b * b + c * c + d * d)
        bad = ~np.isfinite(norm) | (norm == 0.0)
        if bad.any():
            raise ArithmeticError("transfer product over/underflowed a factor")
        a = a / norm
        b = b / norm
        c = c / norm
        d = d / norm
        log_scale = log_scale + np.log(norm)
    return GridTransfer(E, a, b, c, d, log_scale)
