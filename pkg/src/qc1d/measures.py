"""Atoms-plus-steps measures on half-open windows, with exact positions.

A measure here is a finite sum of weighted Dirac atoms and piecewise-constant
densities ("steps").  Everything lives on half-open intervals [x, x+len): a
restriction keeps atoms at its left edge and drops atoms at its right edge.
Positions and lengths are ExactLength values, weights are Fractions, so two
measures are equal iff their canonical forms are structurally equal.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

from .exact import (
    AmbiguousOrderError,
    Basis,
    ExactLength,
    TIE_GUARD,
    as_length,
    sort_lengths,
)

Atom = Tuple[ExactLength, Fraction]
Step = Tuple[ExactLength, ExactLength, Fraction]


def _merge_sorted_atoms(atoms: list) -> list:
    """Merge equal-offset atoms and drop zero weights; input sorted by float."""
    out: list = []
    for off, w in atoms:
        if out and out[-1][0].coeffs == off.coeffs:
            out[-1] = (out[-1][0], out[-1][1] + w)
        elif out and off.value - out[-1][0].value <= TIE_GUARD:
            raise AmbiguousOrderError(
                f"atom offsets {out[-1][0]!r} and {off!r} are within the tie guard"
            )
        else:
            out.append((off, w))
    return [(o, w) for o, w in out if w != 0]


def _resolve_steps(steps: Iterable[Step]) -> list:
    """Sum possibly-overlapping step contributions into disjoint maximal runs."""
    events: list = []  # (position, delta)
    for s, e, v in steps:
        if v == 0:
            continue
        if not s < e:
            raise ValueError("step ranges need start < end")
        events.append((s, v))
        events.append((e, -v))
    if not events:
        return []
    # collapse equal positions
    positions = sort_lengths([p for p, _ in events])
    uniq: list = []
    for p in positions:
        if not uniq or uniq[-1].coeffs != p.coeffs:
            uniq.append(p)
    index = {p.coeffs: i for i, p in enumerate(uniq)}
    delta = [Fraction(0)] * len(uniq)
    for p, v in events:
        delta[index[p.coeffs]] += v
    out: list = []
    level = Fraction(0)
    for i in range(len(uniq) - 1):
        level += delta[i]
        if level == 0:
            continue
        s, e = uniq[i], uniq[i + 1]
        if out and out[-1][2] == level and out[-1][1].coeffs == s.coeffs:
            out[-1] = (out[-1][0], e, level)
        else:
            out.append((s, e, level))
    return out


class PieceContent:
    """Canonical atoms + steps content, offsets relative to a local zero.

    Construction canonicalises: atoms are sorted and merged (zero weights
    dropped), overlapping step contributions are summed, adjacent equal-value
    runs are fused.  Structural equality of canonical forms is measure
    equality.
    """

    __slots__ = ("atoms", "steps", "_atom_keys", "_step_keys")

    def __init__(self, atoms: Iterable[Atom] = (), steps: Iterable[Step] = ()):
        alist = [(o, Fraction(w)) for o, w in atoms]
        alist.sort(key=lambda a: a[0].value)
        alist = _merge_sorted_atoms(alist)
        slist = _resolve_steps((s, e, Fraction(v)) for s, e, v in steps)
        object.__setattr__(self, "atoms", tuple(alist))
        object.__setattr__(self, "steps", tuple(slist))
        object.__setattr__(self, "_atom_keys", None)
        object.__setattr__(self, "_step_keys", None)

    @classmethod
    def _raw(cls, atoms: tuple, steps: tuple) -> "PieceContent":
        """Internal: wrap already-canonical tuples without re-normalising."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "atoms", atoms)
        object.__setattr__(obj, "steps", steps)
        object.__setattr__(obj, "_atom_keys", None)
        object.__setattr__(obj, "_step_keys", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("PieceContent is immutable")

    def __eq__(self, other):
        if not isinstance(other, PieceContent):
            return NotImplemented
        return self.atoms == other.atoms and self.steps == other.steps

    def __hash__(self):
        return hash((self.atoms, self.steps))

    def __repr__(self):
        return f"PieceContent(atoms={list(self.atoms)}, steps={list(self.steps)})"

    def is_empty(self) -> bool:
        return not self.atoms and not self.steps

    # float keys for bisect-driven slicing ---------------------------------

    def _akeys(self):
        if self._atom_keys is None:
            object.__setattr__(self, "_atom_keys", [o.value for o, _ in self.atoms])
        return self._atom_keys

    def _skeys(self):
        if self._step_keys is None:
            object.__setattr__(self, "_step_keys", [s.value for s, _, _ in self.steps])
        return self._step_keys

    # transforms ------------------------------------------------------------

    def translate(self, delta: ExactLength) -> "PieceContent":
        return PieceContent._raw(
            tuple((o + delta, w) for o, w in self.atoms),
            tuple((s + delta, e + delta, v) for s, e, v in self.steps),
        )

    def scale(self, q) -> "PieceContent":
        q = Fraction(q)
        if q == 0:
            return PieceContent._raw((), ())
        return PieceContent._raw(
            tuple((o, w * q) for o, w in self.atoms),
            tuple((s, e, v * q) for s, e, v in self.steps),
        )

    def __add__(self, other: "PieceContent") -> "PieceContent":
        if not isinstance(other, PieceContent):
            return NotImplemented
        return PieceContent(self.atoms + other.atoms, self.steps + other.steps)

    def slice(self, start: ExactLength, stop: ExactLength) -> "PieceContent":
        """Content of [start, stop), re-anchored so that start maps to 0.

        Atoms exactly at ``start`` are kept, atoms exactly at ``stop`` drop.
        """
        atoms = []
        ak = self._akeys()
        lo = bisect.bisect_left(ak, start.value - 2 * TIE_GUARD)
        for i in range(lo, len(self.atoms)):
            o, w = self.atoms[i]
            if o.value > stop.value + 2 * TIE_GUARD:
                break
            if start <= o and o < stop:
                atoms.append((o - start, w))
        steps = []
        for s, e, v in self.steps:
            if e.value < start.value - 2 * TIE_GUARD:
                continue
            if s.value > stop.value + 2 * TIE_GUARD:
                break
            ns = s if s >= start else start
            ne = e if e <= stop else stop
            if ns < ne:
                steps.append((ns - start, ne - start, v))
        return PieceContent._raw(tuple(atoms), tuple(steps))

    # queries -----------------------------------------------------------------

    def breakpoints(self) -> list:
        """Sorted distinct feature positions: atom sites and step edges."""
        pts = [o for o, _ in self.atoms]
        for s, e, _ in self.steps:
            pts.append(s)
            pts.append(e)
        pts = sort_lengths(pts)
        out = []
        for p in pts:
            if not out or out[-1].coeffs != p.coeffs:
                out.append(p)
        return out

    def support_min(self) -> Optional[ExactLength]:
        cands = []
        if self.atoms:
            cands.append(self.atoms[0][0])
        if self.steps:
            cands.append(self.steps[0][0])
        return min(cands) if cands else None

    def support_max(self) -> Optional[ExactLength]:
        """sup of the support: last atom site or last step end."""
        cands = []
        if self.atoms:
            cands.append(self.atoms[-1][0])
        if self.steps:
            cands.append(max(e for _, e, _ in self.steps))
        return max(cands) if cands else None

    def density_runs(self, span: ExactLength, zero: ExactLength) -> list:
        """Partition [0, span) into maximal constant-density runs.

        Returns [(start, end, value)] covering the whole span, zero runs
        included.  Canonical steps are already maximal, so only the gaps
        between them need filling.
        """
        runs = []
        cursor = zero
        for s, e, v in self.steps:
            if cursor < s:
                runs.append((cursor, s, Fraction(0)))
            runs.append((s, e, v))
            cursor = e
        if cursor < span:
            runs.append((cursor, span, Fraction(0)))
        return runs

    def is_lebesgue_multiple(self, span: ExactLength, zero: ExactLength):
        """(True, c) if the content is c * Lebesgue on [0, span)."""
        if self.atoms:
            return (False, None)
        if not self.steps:
            return (True, Fraction(0))
        if len(self.steps) == 1:
            s, e, v = self.steps[0]
            if s == zero and e == span:
                return (True, v)
        return (False, None)


EMPTY_CONTENT = PieceContent._raw((), ())


class Piece:
    """A measure on [0, len) together with the length and an optional label.

    Equality compares length and content only; the label is a name, not part
    of the measure.
    """

    __slots__ = ("length", "content", "label")

    def __init__(self, length: ExactLength, content: PieceContent, label: Optional[str] = None):
        if length.sign() <= 0:
            raise ValueError("piece length must be positive")
        zero = length.basis.zero
        for o, _ in content.atoms:
            if not (zero <= o and o < length):
                raise ValueError(f"atom at {o!r} outside [0, {length!r})")
        for s, e, _ in content.steps:
            if not (zero <= s and e <= length):
                raise ValueError(f"step [{s!r},{e!r}) outside [0, {length!r})")
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "content", content)
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("Piece is immutable")

    def __eq__(self, other):
        if not isinstance(other, Piece):
            return NotImplemented
        return self.length == other.length and self.content == other.content

    def __hash__(self):
        return hash((self.length, self.content))

    def __repr__(self):
        tag = f" {self.label!r}" if self.label is not None else ""
        return f"Piece(len={self.length!r}{tag}, {self.content!r})"

    @property
    def basis(self) -> Basis:
        return self.length.basis

    def relabel(self, label: Optional[str]) -> "Piece":
        return Piece(self.length, self.content, label)

    def is_lebesgue_multiple(self):
        zero = self.basis.zero
        return self.content.is_lebesgue_multiple(self.length, zero)


@dataclass(frozen=True)
class MeasureWindow:
    """The restriction of a measure to [origin, end); content is relative
    to origin."""

    origin: ExactLength
    end: ExactLength
    content: PieceContent

    def __post_init__(self):
        if not self.origin < self.end:
            raise ValueError("window needs origin < end")
        span = self.end - self.origin
        zero = self.basis.zero
        for o, _ in self.content.atoms:
            if not (zero <= o and o < span):
                raise ValueError(f"atom at {o!r} outside window span")
        for s, e, _ in self.content.steps:
            if not (zero <= s and e <= span):
                raise ValueError(f"step [{s!r},{e!r}) outside window span")

    @property
    def basis(self) -> Basis:
        return self.origin.basis

    @property
    def span(self) -> ExactLength:
        return self.end - self.origin

    def as_piece(self, label: Optional[str] = None) -> Piece:
        return Piece(self.span, self.content, label)

    def breakpoints_abs(self) -> list:
        return [self.origin + p for p in self.content.breakpoints()]

    def restrict(self, x, length) -> Piece:
        return restrict(self, x, length)


@dataclass(frozen=True)
class ColoredDeloneSet:
    """Finite strictly increasing point set with integer colors."""

    points: Tuple[ExactLength, ...]
    colors: Tuple[int, ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("empty point set")
        if len(self.points) != len(self.colors):
            raise ValueError("points and colors differ in length")
        for u, v in zip(self.points, self.points[1:]):
            if not u < v:
                raise ValueError("points must be strictly increasing")

    @classmethod
    def uncolored(cls, points) -> "ColoredDeloneSet":
        pts = tuple(points)
        return cls(pts, (0,) * len(pts))

    @property
    def basis(self) -> Basis:
        return self.points[0].basis

    def gaps(self) -> Tuple[ExactLength, ...]:
        return tuple(v - u for u, v in zip(self.points, self.points[1:]))


# -- concatenation and restriction ------------------------------------------


def concat(pieces: Sequence[Piece], label: Optional[str] = None) -> Piece:
    """Lay pieces end to end; piece j is translated by the sum of the
    lengths before it."""
    pieces = list(pieces)
    if not pieces:
        raise ValueError("nothing to concatenate")
    basis = pieces[0].basis
    offset = basis.zero
    atoms: list = []
    steps: list = []
    for p in pieces:
        if p.basis != basis:
            raise ValueError("pieces over different bases")
        c = p.content.translate(offset)
        atoms.extend(c.atoms)
        steps.extend(c.steps)
        offset = offset + p.length
    # blocks are disjoint by construction, but touching equal-value steps
    # across a seam still need fusing, so run full canonicalisation
    return Piece(offset, PieceContent(atoms, steps), label)


def restrict(w: MeasureWindow, x, length) -> Piece:
    """The piece 1_[x, x+length) * w, re-anchored at x.  Exact bounds check."""
    x = as_length(x, w.basis)
    length = as_length(length, w.basis)
    if length.sign() <= 0:
        raise ValueError("restriction length must be positive")
    if not (w.origin <= x):
        raise ValueError(f"restriction start {x!r} before window origin")
    if not (x + length <= w.end):
        raise ValueError(f"restriction [{x!r}, +{length!r}) overruns window end")
    rel = x - w.origin
    return Piece(length, w.content.slice(rel, rel + length))


# -- occurrence sets ----------------------------------------------------------


@dataclass(frozen=True)
class OccurrenceInterval:
    """A continuum of occurrence offsets: lo..hi with explicit closedness."""

    lo: ExactLength
    hi: ExactLength
    lo_closed: bool = True
    hi_closed: bool = True

    def contains(self, x: ExactLength) -> bool:
        if x < self.lo or (x == self.lo and not self.lo_closed):
            return False
        if x > self.hi or (x == self.hi and not self.hi_closed):
            return False
        return True


@dataclass(frozen=True)
class OccurrenceSet:
    """Result of an occurrence search: isolated points, plus closed/open
    ranges when the sought piece is a Lebesgue multiple."""

    points: Tuple[ExactLength, ...] = ()
    intervals: Tuple[OccurrenceInterval, ...] = ()

    @property
    def is_discrete(self) -> bool:
        return not self.intervals

    def __iter__(self):
        if self.intervals:
            raise ValueError("occurrence set has continuum ranges; not iterable")
        return iter(self.points)

    def __len__(self):
        if self.intervals:
            raise ValueError("occurrence set has continuum ranges")
        return len(self.points)

    def is_empty(self) -> bool:
        return not self.points and not self.intervals

    def contains(self, x: ExactLength) -> bool:
        if any(p == x for p in self.points):
            return True
        return any(iv.contains(x) for iv in self.intervals)


def occurrences(w: MeasureWindow, p: Piece) -> OccurrenceSet:
    """All x with origin <= x <= end - p.len where restrict(w,x,len) == p.

    For a piece with at least one feature the candidates are finite: the
    first atom (or first interior density jump) must land on a matching
    feature of the window.  A Lebesgue-multiple piece instead slides freely
    inside any run of matching constant density, so those come back as
    ranges.
    """
    if p.basis != w.basis:
        raise ValueError("piece and window over different bases")
    L = p.length
    zero = w.basis.zero
    span = w.span
    if L > span:
        return OccurrenceSet()
    last = w.end - L

    is_leb, c = p.is_lebesgue_multiple()
    if not is_leb:
        cands: list = []
        if p.content.atoms:
            o1 = p.content.atoms[0][0]
            for o, _ in w.content.atoms:
                x = w.origin + o - o1
                cands.append(x)
        else:
            # no atoms but not Lebesgue: there is an interior density jump
            runs = p.content.density_runs(L, zero)
            o_star = runs[0][1]  # first interior discontinuity of the density
            for pos in w.content.breakpoints():
                x = w.origin + pos - o_star
                cands.append(x)
        pts = []
        seen = set()
        for x in cands:
            if x.coeffs in seen:
                continue
            seen.add(x.coeffs)
            if w.origin <= x and x <= last:
                if restrict(w, x, L).content == p.content:
                    pts.append(x)
        return OccurrenceSet(points=tuple(sort_lengths(pts)))

    # Lebesgue multiple: find maximal runs of density == c, split at atoms
    runs = w.content.density_runs(span, zero)
    segments: list = []  # (lo, lo_closed, hi) in window-relative offsets
    for s, e, v in runs:
        if v != c:
            continue
        cuts = [(s, True)]
        for o, _ in w.content.atoms:
            if s <= o and o < e:
                cuts.append((o, False))  # window starting at the atom is invalid
        pieces_bounds = []
        for i, (lo, closed) in enumerate(cuts):
            hi = cuts[i + 1][0] if i + 1 < len(cuts) else e
            pieces_bounds.append((lo, closed, hi))
        segments.extend(pieces_bounds)
    points: list = []
    intervals: list = []
    for lo, lo_closed, hi in segments:
        x_lo = w.origin + lo
        x_hi = w.origin + hi - L
        if x_hi < x_lo:
            continue
        if x_hi == x_lo:
            if lo_closed:
                points.append(x_lo)
            continue
        intervals.append(OccurrenceInterval(x_lo, x_hi, lo_closed, True))
    return OccurrenceSet(points=tuple(sort_lengths(points)), intervals=tuple(intervals))


# -- point-set analysis -------------------------------------------------------


@dataclass(frozen=True)
class PointSetReport:
    is_delone: bool
    patch_count: int
    anchors_used: int
    min_gap: Optional[float]
    max_gap: Optional[float]
    distinct_gaps: int


def analyze_point_set(D: ColoredDeloneSet, r: float, R: float, L) -> PointSetReport:
    """Window verdict on Delone parameters plus a colored-patch census.

    Delone on the window means every gap sits in [2r, R] (closed bounds,
    float comparison with a small slack).  Patches are the exact colored
    configurations (D - x) within the closed ball of radius L, counted over
    interior anchors only.
    """
    gaps = D.gaps()
    gap_floats = [g.value for g in gaps]
    slack = 1e-12
    is_delone = all(2 * r - slack <= g <= R + slack for g in gap_floats) if gaps else True

    L = as_length(L, D.basis)
    lo_lim, hi_lim = D.points[0], D.points[-1]
    patches = set()
    anchors = 0
    n = len(D.points)
    for i, x in enumerate(D.points):
        if x - L < lo_lim or x + L > hi_lim:
            continue
        anchors += 1
        patch = []
        for j in range(i, -1, -1):
            d = D.points[j] - x
            if -d > L:
                break
            patch.append((d.coeffs, D.colors[j]))
        patch.reverse()
        for j in range(i + 1, n):
            d = D.points[j] - x
            if d > L:
                break
            patch.append((d.coeffs, D.colors[j]))
        patches.add(tuple(patch))

    distinct = len({g.coeffs for g in gaps})
    return PointSetReport(
        is_delone=is_delone,
        patch_count=len(patches),
        anchors_used=anchors,
        min_gap=min(gap_floats) if gap_floats else None,
        max_gap=max(gap_floats) if gap_floats else None,
        distinct_gaps=distinct,
    )


# -- convolution with profiles ------------------------------------------------


def convolve(D: ColoredDeloneSet, profiles: Mapping[int, Piece]) -> MeasureWindow:
    """Place profile_color(x) at every x in D and sum the overlaps.

    The result window runs from min(D) to max over x of x + len(profile).
    """
    basis = D.basis
    for piece in profiles.values():
        if piece.basis != basis:
            raise ValueError("profile basis does not match point set")
    missing = {c for c in D.colors if c not in profiles}
    if missing:
        raise KeyError(f"no profile for colors {sorted(missing)}")
    origin = D.points[0]
    end = None
    atoms: list = []
    steps: list = []
    for x, color in zip(D.points, D.colors):
        piece = profiles[color]
        shifted = piece.content.translate(x - origin)
        atoms.extend(shifted.atoms)
        steps.extend(shifted.steps)
        reach = x + piece.length
        if end is None or reach > end:
            end = reach
    return MeasureWindow(origin, end, PieceContent(atoms, steps))


# -- translation boundedness ----------------------------------------------


def check_translation_bound(w: MeasureWindow, C) -> bool:
    """Does |w|(J) <= C * max(|J|, 1) hold for every compact J in the window?

    The total-variation mass of a closed interval is piecewise linear in its
    endpoints, so the supremum is attained with both endpoints on content
    breakpoints or at a unit-width kink; those finitely many candidates are
    enumerated.  The final comparison is float-based with a 1e-9 slack.
    """
    C = float(C)
    span = w.span
    zero = w.basis.zero
    bps = [zero] + w.content.breakpoints() + [span]
    uniq: list = []
    for p in bps:
        if not uniq or uniq[-1].coeffs != p.coeffs:
            uniq.append(p)
    bps = uniq
    n = len(bps)
    bp_vals = [p.value for p in bps]

    atom_pos = [o.value for o, _ in w.content.atoms]
    atom_mass = [abs(float(m)) for _, m in w.content.atoms]
    step_s = [s.value for s, _, _ in w.content.steps]
    step_e = [e.value for _, e, _ in w.content.steps]
    step_v = [abs(float(v)) for _, _, v in w.content.steps]

    def mass_closed(s: float, t: float) -> float:
        tot = 0.0
        eps = TIE_GUARD
        for p, m in zip(atom_pos, atom_mass):
            if s - eps <= p <= t + eps:
                tot += m
        for ss, ee, vv in zip(step_s, step_e, step_v):
            lo = max(s, ss)
            hi = min(t, ee)
            if hi > lo:
                tot += vv * (hi - lo)
        return tot

    candidates = []
    for i in range(n):
        for j in range(i, n):
            candidates.append((bp_vals[i], bp_vals[j]))
        s = bp_vals[i]
        if s + 1.0 <= span.value + TIE_GUARD:
            candidates.append((s, min(s + 1.0, span.value)))
        t = bp_vals[i]
        if t - 1.0 >= -TIE_GUARD:
            candidates.append((max(t - 1.0, 0.0), t))

    slack = 1e-9
    for s, t in candidates:
        bound = C * max(t - s, 1.0)
        if mass_closed(s, t) > bound * (1.0 + 1e-12) + slack:
            return False
    return True
