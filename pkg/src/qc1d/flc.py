"""Decompositions of window measures and finiteness-property checkers.

A decomposition cuts a window into labelled pieces drawn from a finite piece
set.  On top of that sit window verdicts for the finiteness hierarchy: the
simple finite decomposition property (does the measure just after a grid
point follow from what happened just before?), unique local determination,
finite-pattern and finite-extension censuses, and eventual periodicity.

All verdicts are *on the window*: they can refute a property with an exact
counterexample, or report that no violation is visible in the data at hand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import Basis, ExactLength, as_length
from .measures import (
    MeasureWindow,
    OccurrenceSet,
    Piece,
    PieceContent,
    ColoredDeloneSet,
    concat,
    convolve,
    occurrences,
    restrict,
)


class NoDecompositionError(ValueError):
    """The window cannot be tiled by the given pieces from the given start."""


class WindowTooShortError(ValueError):
    """The window does not contain enough data to run the requested check."""


class AccumulatingOccurrencesError(ValueError):
    """Occurrence points bunch up (or form a continuum); recoding by them
    would not produce a locally finite grid."""


class NotRelativelyDenseError(ValueError):
    """Occurrence points leave gaps too large for the requested recoding."""


class PieceSet:
    """Finite collection of labelled pieces over one basis."""

    def __init__(self, pieces: Sequence[Piece]):
        pieces = list(pieces)
        if not pieces:
            raise ValueError("empty piece set")
        labels = [p.label for p in pieces]
        if any(l is None for l in labels):
            raise ValueError("every piece in a set needs a label")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate piece labels")
        basis = pieces[0].basis
        if any(p.basis != basis for p in pieces):
            raise ValueError("pieces over different bases")
        self.pieces: Tuple[Piece, ...] = tuple(sorted(pieces, key=lambda p: p.label))
        self.basis = basis
        self.by_label: Dict[str, Piece] = {p.label: p for p in self.pieces}

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self):
        return len(self.pieces)

    def __getitem__(self, label: str) -> Piece:
        return self.by_label[label]

    @property
    def min_length(self) -> ExactLength:
        return min(p.length for p in self.pieces)

    @property
    def max_length(self) -> ExactLength:
        return max(p.length for p in self.pieces)

    def __repr__(self):
        return f"PieceSet({[p.label for p in self.pieces]})"


class Decomposition:
    """A tiling of [x0, x0 + sum of lengths) by labelled pieces."""

    def __init__(self, window: MeasureWindow, piece_set: PieceSet, x0: ExactLength,
                 labels: Sequence[str]):
        self.window = window
        self.piece_set = piece_set
        self.x0 = x0
        self.labels: Tuple[str, ...] = tuple(labels)
        grid = [x0]
        for lab in self.labels:
            grid.append(grid[-1] + piece_set[lab].length)
        self.grid: Tuple[ExactLength, ...] = tuple(grid)

    def __len__(self):
        return len(self.labels)

    @property
    def end(self) -> ExactLength:
        return self.grid[-1]

    def pieces(self) -> List[Piece]:
        return [self.piece_set[lab] for lab in self.labels]

    def piece_at(self, i: int) -> Piece:
        return self.piece_set[self.labels[i]]

    def verify_round_trip(self) -> bool:
        """concat of the pieces reproduces the window over the tiled span."""
        if not self.labels:
            return True
        rebuilt = concat(self.pieces())
        segment = restrict(self.window, self.x0, self.end - self.x0)
        return rebuilt == segment

    def __repr__(self):
        return f"Decomposition(x0={self.x0!r}, labels={''.join(self.labels) if all(len(l)==1 for l in self.labels) else list(self.labels)})"


def _piece_matches(window: MeasureWindow, piece: Piece, x: ExactLength) -> bool:
    if x + piece.length > window.end:
        return False
    return restrict(window, x, piece.length).content == piece.content


def _cursor_graph(window: MeasureWindow, piece_set: PieceSet, x0: ExactLength):
    """Explore every tiling branch from x0.

    Returns (children, exact, deep, cursor_of) keyed by cursor coefficient
    tuples: children lists the (label, child_key) moves in label order,
    exact marks cursors from which the window end is reachable precisely,
    and deep gives the farthest cursor reachable at all.
    """
    end = window.end
    children: Dict[tuple, List[Tuple[str, tuple]]] = {}
    exact: Dict[tuple, bool] = {}
    deep: Dict[tuple, ExactLength] = {}
    cursor_of: Dict[tuple, ExactLength] = {x0.coeffs: x0}

    stack: List[Tuple[ExactLength, bool]] = [(x0, False)]
    while stack:
        cursor, expanded = stack.pop()
        key = cursor.coeffs
        if key in exact:
            continue
        if not expanded:
            if key not in children:
                opts = []
                for piece in piece_set:  # label order
                    if _piece_matches(window, piece, cursor):
                        child = cursor + piece.length
                        cursor_of.setdefault(child.coeffs, child)
                        opts.append((piece.label, child.coeffs))
                children[key] = opts
            stack.append((cursor, True))
            for _, ck in children[key]:
                if ck not in exact:
                    stack.append((cursor_of[ck], False))
            continue
        opts = children[key]
        exact[key] = (cursor == end) or any(exact.get(ck, False) for _, ck in opts)
        best = cursor
        for _, ck in opts:
            reach = deep.get(ck, cursor_of[ck])
            if reach > best:
                best = reach
        deep[key] = best
    return children, exact, deep, cursor_of


def decompose(window: MeasureWindow, piece_set: PieceSet, x0) -> Decomposition:
    """Tile the window from x0 with pieces from the set.

    Tilings that meet the window end exactly take precedence; among those
    the label sequence lexicographically first in sorted-label order is
    returned.  When no branch reaches the end exactly (the window stops
    mid-cell), the deepest partial tiling is returned instead, leaving an
    untiled tail shorter than one cell.  Raises NoDecompositionError when
    not even the first cell matches.
    """
    x0 = as_length(x0, window.basis)
    if not (window.origin <= x0 and x0 < window.end):
        raise ValueError("x0 outside window")
    children, exact, deep, cursor_of = _cursor_graph(window, piece_set, x0)

    key = x0.coeffs
    if not children[key] and window.end - x0 >= piece_set.min_length:
        raise NoDecompositionError(
            f"no tiling of the window from {x0!r} with {piece_set!r}"
        )
    labels: List[str] = []
    if exact[key]:
        while cursor_of[key] != window.end:
            label, key = next(
                (lab, ck) for lab, ck in children[key] if exact[ck]
            )
            labels.append(label)
    else:
        target = deep[key]
        while cursor_of[key] != target:
            label, key = next(
                (lab, ck) for lab, ck in children[key]
                if deep.get(ck, cursor_of[ck]) == target
            )
            labels.append(label)
    return Decomposition(window, piece_set, x0, labels)


# -- simple finite decomposition property ------------------------------------


@dataclass(frozen=True)
class SfdpCounterexample:
    """Two grid points whose pasts agree piece-by-piece over at least ell and
    whose futures agree as measures over ell, yet the next pieces differ in
    length."""

    y: ExactLength
    z: ExactLength
    prefix_length: ExactLength
    label_y: str
    label_z: str
    length_y: ExactLength
    length_z: ExactLength


def check_sfdp(window: MeasureWindow, dec: Decomposition, ell) -> Optional[SfdpCounterexample]:
    """Scan all grid pairs for violations of the one-step determinism rule.

    Hypotheses for a pair (y, z): the label runs immediately before y and z
    agree piece-for-piece over an accumulated length >= ell, and the window
    measures on [y, y+ell) and [z, z+ell) are equal.  Conclusion checked:
    the pieces starting at y and z have equal length (label equality is not
    required, equal length is the exact content of the property).

    Returns None when no violation exists on the window, else the first
    counterexample found.  Raises WindowTooShortError when fewer than two
    grid points carry both an ell-deep past and an ell-long future.
    """
    ell = as_length(ell, window.basis)
    if ell.sign() <= 0:
        raise ValueError("ell must be positive")
    labels = dec.labels
    grid = dec.grid
    n = len(labels)
    lens = [dec.piece_set[lab].length for lab in labels]

    eligible = []
    for i in range(n):
        if grid[i] - grid[0] >= ell and grid[-1] - grid[i] >= ell:
            eligible.append(i)
    if len(eligible) < 2:
        raise WindowTooShortError(
            f"only {len(eligible)} grid points carry an ell-collar; need 2"
        )

    def common_past(i: int, j: int) -> bool:
        acc = window.basis.zero
        k = 1
        while acc < ell:
            if i - k < 0 or j - k < 0:
                return False
            if labels[i - k] != labels[j - k]:
                return False
            acc = acc + lens[i - k]
            k += 1
        return True

    # bucket eligible indices by the forward measure over [y, y+ell)
    buckets: Dict[PieceContent, List[int]] = {}
    for i in eligible:
        key = restrict(window, grid[i], ell).content
        buckets.setdefault(key, []).append(i)

    for group in buckets.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                i, j = group[a], group[b]
                if lens[i] == lens[j]:
                    continue
                if common_past(i, j):
                    return SfdpCounterexample(
                        y=grid[i],
                        z=grid[j],
                        prefix_length=ell,
                        label_y=labels[i],
                        label_z=labels[j],
                        length_y=lens[i],
                        length_z=lens[j],
                    )
    return None


# -- unique determination by local context ------------------------------------


def _all_grid_placements(window: MeasureWindow, piece_set: PieceSet, x0: ExactLength):
    """Every (cursor, label) pair that appears in some maximal tiling from x0.

    Branches that meet the window end exactly dominate: when any exist, only
    their placements count (a ragged branch that merely ran out of room near
    the edge carries no information about the grid).  Otherwise every deepest
    partial branch contributes.
    """
    children, exact, deep, cursor_of = _cursor_graph(window, piece_set, x0)
    key0 = x0.coeffs
    if not children[key0] and window.end - x0 >= piece_set.min_length:
        raise NoDecompositionError(f"no tiling of the window from {x0!r}")

    if exact[key0]:
        keep = lambda ck: exact[ck]
    else:
        target = deep[key0]
        keep = lambda ck: deep.get(ck, cursor_of[ck]) == target

    placements: List[Tuple[ExactLength, str]] = []
    seen = set()
    frontier = [key0]
    while frontier:
        key = frontier.pop()
        if key in seen:
            continue
        seen.add(key)
        for label, ck in children.get(key, []):
            if keep(ck):
                placements.append((cursor_of[key], label))
                frontier.append(ck)
    return placements


def check_udp(window: MeasureWindow, piece_set: PieceSet, R, x0=None) -> bool:
    """Is the piece placed at a grid point a function of the measure on
    [x - R, x + R)?

    All tilings from x0 are enumerated (dynamic programming over cursors).
    Only grid points whose context window fits inside the window are judged;
    the verdict is false iff two placements share an identical context but
    place pieces of different labels.
    """
    R = as_length(R, window.basis)
    if R.sign() <= 0:
        raise ValueError("R must be positive")
    x0 = window.origin if x0 is None else as_length(x0, window.basis)
    placements = _all_grid_placements(window, piece_set, x0)

    table: Dict[PieceContent, set] = {}
    for cursor, label in placements:
        if cursor - R < window.origin or cursor + R > window.end:
            continue
        ctx = restrict(window, cursor - R, R + R).content
        table.setdefault(ctx, set()).add(label)
    return all(len(v) == 1 for v in table.values())


# -- finite pattern / extension censuses --------------------------------------


@dataclass(frozen=True)
class FlpReport:
    """Patch census anchored at content breakpoints."""

    rho: float
    counts: Tuple[Tuple[float, int], ...]  # (L, distinct patch count)
    anchors_used: Tuple[Tuple[float, int], ...]
    has_unanchored_points: bool
    max_anchor_gap: Optional[float]


def check_flp(window: MeasureWindow, rho, L_list) -> FlpReport:
    """Count distinct local patterns [x'-L, x'+L) over breakpoint anchors.

    Every sampled point adopts its nearest content breakpoint within rho as
    anchor (ties to the left); since breakpoints anchor themselves, the patch
    census runs over interior breakpoints.  Points farther than rho from any
    breakpoint are reported via has_unanchored_points.
    """
    rho = float(rho)
    basis = window.basis
    bps = window.breakpoints_abs()
    counts = []
    anchors_used = []
    for L in L_list:
        L = as_length(L, basis)
        patches = set()
        used = 0
        for x in bps:
            if x - L < window.origin or x + L > window.end:
                continue
            used += 1
            patches.add(restrict(window, x - L, L + L).content)
        counts.append((L.value, len(patches)))
        anchors_used.append((L.value, used))

    # largest distance from a window point to the nearest breakpoint
    max_gap = None
    if bps:
        walls = [window.origin] + bps + [window.end]
        gaps = []
        gaps.append(bps[0].value - window.origin.value)  # before first anchor
        for u, v in zip(bps, bps[1:]):
            gaps.append((v.value - u.value) / 2.0)
        gaps.append(window.end.value - bps[-1].value)
        max_gap = max(gaps) if gaps else None
    unanchored = (max_gap is None) or (max_gap > rho + 1e-12)
    return FlpReport(
        rho=rho,
        counts=tuple(counts),
        anchors_used=tuple(anchors_used),
        has_unanchored_points=unanchored,
        max_anchor_gap=max_gap,
    )


@dataclass(frozen=True)
class FepReport:
    """Right-extension census: distinct length-L continuations per left
    context of length rho, harvested at interior breakpoints."""

    rho: float
    L: float
    extension_set_size: int
    anchors_used: int
    max_extensions_per_prefix: int
    extensions_per_prefix: Tuple[int, ...]
    has_unanchored_points: bool


def check_fep(window: MeasureWindow, rho, L) -> FepReport:
    rho_el = as_length(rho, window.basis)
    L_el = as_length(L, window.basis)
    table: Dict[PieceContent, set] = {}
    all_ext: set = set()
    used = 0
    for x in window.breakpoints_abs():
        if x - rho_el < window.origin or x + L_el > window.end:
            continue
        used += 1
        prefix = restrict(window, x - rho_el, rho_el).content
        ext = restrict(window, x, L_el).content
        table.setdefault(prefix, set()).add(ext)
        all_ext.add(ext)
    per_prefix = tuple(sorted(len(v) for v in table.values()))
    flp = check_flp(window, float(rho_el.value), [])
    return FepReport(
        rho=rho_el.value,
        L=L_el.value,
        extension_set_size=len(all_ext),
        anchors_used=used,
        max_extensions_per_prefix=max(per_prefix) if per_prefix else 0,
        extensions_per_prefix=per_prefix,
        has_unanchored_points=flp.has_unanchored_points,
    )


# -- recoding by occurrences ---------------------------------------------------


def recode_by_occurrences(window: MeasureWindow, piece_set: PieceSet,
                          pilot=None, max_gap=None) -> Decomposition:
    """Cut the window at the occurrence points of a pilot piece.

    The cells between consecutive occurrences become the new pieces, labelled
    q0, q1, ... in order of first appearance (equal contents share a label).
    The pilot defaults to the first piece (label order) whose occurrence set
    is discrete with gaps at least a quarter of the shortest piece length.
    """
    lmin = piece_set.min_length
    threshold = lmin / 4

    def try_pilot(piece: Piece) -> Decomposition:
        occ = occurrences(window, piece)
        if not occ.is_discrete:
            raise AccumulatingOccurrencesError(
                f"occurrences of {piece.label or piece!r} form a continuum"
            )
        pts = list(occ.points)
        if len(pts) < 2:
            raise NotRelativelyDenseError(
                f"{len(pts)} occurrence(s) of {piece.label or piece!r}; need 2"
            )
        for u, v in zip(pts, pts[1:]):
            if v - u < threshold:
                raise AccumulatingOccurrencesError(
                    f"occurrence gap {v - u!r} below {threshold!r}"
                )
            if max_gap is not None and v - u > as_length(max_gap, window.basis):
                raise NotRelativelyDenseError(
                    f"occurrence gap {v - u!r} exceeds max_gap"
                )
        return _decomposition_from_grid(window, pts)

    if pilot is not None:
        piece = piece_set[pilot] if isinstance(pilot, str) else pilot
        return try_pilot(piece)
    err: Optional[Exception] = None
    for piece in piece_set:
        try:
            return try_pilot(piece)
        except (AccumulatingOccurrencesError, NotRelativelyDenseError) as e:
            err = e
    raise err  # type: ignore[misc]


def _decomposition_from_grid(window: MeasureWindow, grid_points: List[ExactLength],
                             prefix: str = "q") -> Decomposition:
    """Build a decomposition whose cells run between consecutive grid points,
    assigning labels by content in order of first appearance."""
    cells = []
    for u, v in zip(grid_points, grid_points[1:]):
        cells.append(restrict(window, u, v - u))
    catalog: Dict[Piece, str] = {}
    labels = []
    pieces = []
    for c in cells:
        lab = catalog.get(c)
        if lab is None:
            lab = f"{prefix}{len(catalog)}"
            catalog[c] = lab
            pieces.append(c.relabel(lab))
        labels.append(lab)
    pset = PieceSet(pieces)
    return Decomposition(window, pset, grid_points[0], labels)


def build_delone_decomposition(D: ColoredDeloneSet, nu: Piece):
    """Assemble the convolution of D with profile nu and cut it at the points
    of D.

    Cell k holds the translates of nu launched from every point of D within
    reach behind the cell (support of nu is [0, s]); equal cell contents share
    a label.  Returns the decomposition; the assembled window is available as
    its .window attribute.
    """
    if len(set(D.colors)) != 1:
        raise ValueError("build_delone_decomposition expects a single color")
    smin = nu.content.support_min()
    if smin is None:
        raise ValueError("profile must be a nonzero measure")
    if not smin.is_zero():
        raise ValueError("profile support must start at 0")
    window = convolve(D, {D.colors[0]: nu})
    grid = list(D.points)
    return _decomposition_from_grid(window, grid, prefix="d")


# -- eventual periodicity -------------------------------------------------------


def detect_eventual_period(window: MeasureWindow, x_search_range=None):
    """Smallest exact period p (a breakpoint difference) and earliest x0 with
    the tail [x0, end) p-periodic.

    Candidate periods are differences from the last breakpoint (a true period
    with two visible repetitions must map some breakpoint onto the last one),
    capped at a third of the window span.  Candidate x0 values are the window
    origin and the breakpoints inside the optional search range; x0 must
    leave at least three periods of tail, so a lone repetition hugging the
    window edge (aperiodic sequences end in squares all the time) does not
    count as evidence.  Returns (x0, p) or None; windows without breakpoints
    have no candidate periods and return None.
    """
    bps = window.breakpoints_abs()
    if not bps:
        return None
    span = window.span
    last = bps[-1]
    cap = span / 3
    cand_p = []
    seen = set()
    for x in bps[:-1]:
        p = last - x
        if p.coeffs in seen:
            continue
        seen.add(p.coeffs)
        if p <= cap:
            cand_p.append(p)
    cand_p.sort(key=lambda p: p.value)

    starts = [window.origin] + [b for b in bps if b != window.origin]
    if x_search_range is not None:
        lo, hi = x_search_range
        lo = as_length(lo, window.basis)
        hi = as_length(hi, window.basis)
        starts = [x for x in starts if lo <= x and x <= hi]
        if not starts:
            return None

    for p in cand_p:
        # validity is monotone in x0, so binary search the earliest
        limit = window.end - p - p - p
        xs = [x for x in starts if x <= limit]
        if not xs:
            continue

        def valid(x0: ExactLength) -> bool:
            T = window.end - x0 - p
            return restrict(window, x0, T).content == restrict(window, x0 + p, T).content

        lo_i, hi_i = 0, len(xs) - 1
        if not valid(xs[hi_i]):
            continue
        while lo_i < hi_i:
            mid = (lo_i + hi_i) // 2
            if valid(xs[mid]):
                hi_i = mid
            else:
                lo_i = mid + 1
        return (xs[lo_i], p)
    return None


# -- measures of finite type over a profile system ------------------------------


def check_delone_measure_flc(window: MeasureWindow, profiles: Sequence[Piece],
                             max_gap=None) -> bool:
    """Is the window measure assembled from the given profiles over a Delone
    FLC set of occurrence points?

    Checks (i) the union of the profiles' occurrence sets is discrete,
    non-empty, with gaps bounded by max_gap when given, and (ii) away from
    the window edges every support point of the measure is covered by an
    occurrence translate of some profile's support.
    """
    basis = window.basis
    all_pts: List[ExactLength] = []
    cover: List[Tuple[ExactLength, ExactLength]] = []  # closed intervals
    cover_pts: List[ExactLength] = []
    for nu in profiles:
        occ = occurrences(window, nu)
        if not occ.is_discrete:
            return False
        for x in occ.points:
            all_pts.append(x)
            runs_atoms = nu.content.atoms
            for o, _ in runs_atoms:
                cover_pts.append(x + o)
            for s, e, _ in nu.content.steps:
                cover.append((x + s, x + e))
    if not all_pts:
        return False
    if max_gap is not None:
        mg = as_length(max_gap, basis)
        ordered = sorted(all_pts, key=lambda p: p.value)
        dedup = []
        for p in ordered:
            if not dedup or dedup[-1].coeffs != p.coeffs:
                dedup.append(p)
        for u, v in zip(dedup, dedup[1:]):
            if v - u > mg:
                return False

    margin = max(nu.length for nu in profiles)
    lo = window.origin + margin
    hi = window.end - margin
    if not lo < hi:
        raise WindowTooShortError("window shorter than twice the profile length")

    cover_pt_keys = {p.coeffs for p in cover_pts}

    def point_covered(x: ExactLength) -> bool:
        if x.coeffs in cover_pt_keys:
            return True
        return any(s <= x and x <= e for s, e in cover)

    for o, _ in window.content.atoms:
        x = window.origin + o
        if lo <= x and x <= hi and not point_covered(x):
            return False

    # each step of the window must be covered (up to endpoints) by cover runs
    events = []
    for s, e in cover:
        events.append((s, e))
    for s, e, _ in window.content.steps:
        s_abs = window.origin + s
        e_abs = window.origin + e
        seg_lo = max(s_abs, lo)
        seg_hi = min(e_abs, hi)
        if not seg_lo < seg_hi:
            continue
        # sweep: subtract covering intervals from [seg_lo, seg_hi]
        cursor = seg_lo
        for cs, ce in sorted(events, key=lambda t: t[0].value):
            if ce <= cursor:
                continue
            if cs > cursor:
                return False
            cursor = ce
            if cursor >= seg_hi:
                break
        if cursor < seg_hi:
            return False
    return True
