"""Two-sided symbolic words: substitutions, circle-map codings, Bernoulli
samples, and the three-block repetition scan.

A Word is a finite string of symbols together with the index of the symbol
sitting at position 0, so windows of two-sided sequences keep their
alignment through slicing and recoding.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .flc import WindowTooShortError
from .surds import QuadSurd


class RationalRotationWarning(UserWarning):
    """Circle-map coding with rational rotation number: the word is periodic
    and the usual aperiodicity conclusions do not apply."""


class AmbiguousSymbolError(ArithmeticError):
    """A coding decision fell inside the guard band of an approximate input:
    the symbol cannot be trusted at the supplied precision."""


class Word:
    """Symbols at positions origin, origin+1, ..., origin+len-1."""

    __slots__ = ("symbols", "origin")

    def __init__(self, symbols: Union[str, Sequence[str]], origin: int = 0):
        if isinstance(symbols, str):
            self.symbols = tuple(symbols)
        else:
            self.symbols = tuple(symbols)
            if any(not isinstance(s, str) or not s for s in self.symbols):
                raise ValueError("symbols must be non-empty strings")
        self.origin = int(origin)

    def __len__(self):
        return len(self.symbols)

    @property
    def start(self) -> int:
        return self.origin

    @property
    def stop(self) -> int:
        return self.origin + len(self.symbols)

    def __getitem__(self, n: int) -> str:
        """Symbol at absolute position n."""
        i = n - self.origin
        if not 0 <= i < len(self.symbols):
            raise IndexError(f"position {n} outside [{self.start}, {self.stop})")
        return self.symbols[i]

    def window(self, start: int, stop: int) -> "Word":
        if start < self.start or stop > self.stop or start > stop:
            raise IndexError(f"[{start}, {stop}) outside [{self.start}, {self.stop})")
        i = start - self.origin
        return Word(self.symbols[i:i + (stop - start)], start)

    def alphabet(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.symbols)))

    def as_str(self) -> str:
        if any(len(s) != 1 for s in self.symbols):
            raise ValueError("multi-character symbols; no flat string form")
        return "".join(self.symbols)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.symbols == other.symbols and self.origin == other.origin

    def __hash__(self):
        return hash((self.symbols, self.origin))

    def __repr__(self):
        body = self.as_str() if all(len(s) == 1 for s in self.symbols) else list(self.symbols)
        return f"Word({body!r}, origin={self.origin})"


def substitution_word(rules: Dict[str, Union[str, Sequence[str]]], seed: str,
                      iterations: int, max_length: Optional[int] = None) -> Word:
    """Iterate a substitution from a seed symbol; origin 0.

    Rules map each symbol to its replacement string.  max_length truncates
    the final word (the iteration itself is not interrupted early, but each
    intermediate word is clipped to max_length to keep memory bounded; for
    expanding substitutions the prefix is unaffected by clipping).
    """
    norm: Dict[str, Tuple[str, ...]] = {}
    for k, v in rules.items():
        norm[k] = tuple(v) if not isinstance(v, str) else tuple(v)
    if seed not in norm:
        raise ValueError(f"seed {seed!r} has no rule")
    current: Tuple[str, ...] = (seed,)
    for _ in range(iterations):
        out: List[str] = []
        for s in current:
            if s not in norm:
                raise ValueError(f"symbol {s!r} has no rule")
            out.extend(norm[s])
            if max_length is not None and len(out) >= max_length:
                break
        current = tuple(out[:max_length]) if max_length is not None else tuple(out)
    return Word(current, 0)


ExactNumber = Union[Fraction, QuadSurd, int]


def _as_exact(x) -> ExactNumber:
    if isinstance(x, (QuadSurd, Fraction)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        from .surds import parse_number
        return parse_number(x)
    if isinstance(x, float):
        f = Fraction(x)
        warnings.warn(
            f"float {x!r} read as the exact binary rational {f}; "
            "pass a string or Fraction for decimal intent",
            stacklevel=3,
        )
        return f
    raise TypeError(f"cannot treat {type(x).__name__} as an exact number")


# an approximate (decimal) input is rejected when a membership decision
# falls closer to the boundary than this
_DECIMAL_GUARD = Fraction(1, 10 ** 40)


def _is_decimal_literal(x) -> bool:
    return isinstance(x, str) and "." in x


def circle_map_word(alpha, beta, n_range: Tuple[int, int],
                    symbols: Tuple[str, str] = ("0", "1")) -> Word:
    """Coding n -> 1 iff n*alpha mod 1 lies in (1-beta, 1]; exact arithmetic.

    alpha and beta may be Fractions, QuadSurds, ints, or strings such as
    'golden-1', 'sqrt5-2', '1/3'.  The representative of n*alpha mod 1 is
    taken in [0, 1), so the closed right endpoint of the coding interval is
    never attained and membership reduces to frac > 1 - beta, decided
    exactly.  Exact rational alpha triggers RationalRotationWarning.

    Decimal strings like '0.41421356' are approximations: arithmetic still
    runs exactly on the literal value, but any comparison landing within
    1e-40 of the boundary raises AmbiguousSymbolError instead of silently
    picking a symbol, and no periodicity warning is issued.
    """
    guarded = _is_decimal_literal(alpha) or _is_decimal_literal(beta)
    a = _as_exact(alpha)
    b = _as_exact(beta)
    lo, hi = int(n_range[0]), int(n_range[1])
    if hi <= lo:
        raise ValueError("empty n_range")
    rational = isinstance(a, Fraction) or (isinstance(a, QuadSurd) and a.is_rational)
    if rational and not guarded:
        warnings.warn(
            "rational rotation number: the coding is periodic",
            RationalRotationWarning,
            stacklevel=2,
        )
    threshold = Fraction(1) - b
    out: List[str] = []
    x = a * lo
    for n in range(lo, hi):
        if isinstance(x, QuadSurd):
            frac = x.frac()
        else:
            frac = x - math.floor(x)
        diff = frac - threshold
        if guarded:
            near = (-_DECIMAL_GUARD < diff) and (diff < _DECIMAL_GUARD)
            if near:
                raise AmbiguousSymbolError(
                    f"n={n}: n*alpha mod 1 sits within 1e-40 of the coding "
                    "boundary; supply more digits or an exact value"
                )
        positive = diff.sign() > 0 if isinstance(diff, QuadSurd) else diff > 0
        out.append(symbols[1] if positive else symbols[0])
        x = x + a
    return Word(out, lo)


def bernoulli_word(p: float, n_range: Tuple[int, int], seed: int,
                   symbols: Tuple[str, str] = ("0", "1")) -> Word:
    """Independent draws, P(symbol 1) = p, reproducible from the seed."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    lo, hi = int(n_range[0]), int(n_range[1])
    if hi <= lo:
        raise ValueError("empty n_range")
    rng = np.random.default_rng(seed)
    draws = rng.random(hi - lo) < p
    return Word([symbols[1] if d else symbols[0] for d in draws], lo)


def count_occurrences(word: Word, factor: Union[str, Sequence[str], Word]) -> int:
    """Occurrences of a factor, overlaps allowed."""
    if isinstance(factor, Word):
        fac = factor.symbols
    elif isinstance(factor, str):
        fac = tuple(factor)
    else:
        fac = tuple(factor)
    if not fac:
        raise ValueError("empty factor")
    syms = word.symbols
    m = len(fac)
    return sum(1 for i in range(len(syms) - m + 1) if syms[i:i + m] == fac)


def factor_complexity(word: Word, n: int) -> int:
    """Number of distinct length-n factors visible in the word."""
    syms = word.symbols
    if n <= 0 or n > len(syms):
        raise ValueError("factor length outside the word")
    return len({syms[i:i + n] for i in range(len(syms) - n + 1)})


# -- three-block repetitions ---------------------------------------------------


@dataclass(frozen=True)
class GordonReport:
    """Census of three-block repetitions x(t-p..t-1) = x(t..t+p-1) =
    x(t+p..t+2p-1) for one period length p over the scanned positions."""

    p: int
    t_range: Tuple[int, int]
    positions_scanned: int
    hits: int
    density: float
    hit_positions: Tuple[int, ...]

    def __bool__(self):
        return self.hits > 0


def gordon_scan(word: Word, p: int, t_range: Optional[Tuple[int, int]] = None,
                max_hits_stored: int = 1000) -> GordonReport:
    """Scan positions t for the triple repetition with period p.

    A position t qualifies when the three consecutive p-blocks ending at
    t - 1, t + p - 1 and t + 2p - 1 coincide.  t ranges over t_range
    (default: every t with all three blocks inside the word).
    """
    if p <= 0:
        raise ValueError("p must be positive")
    lo_ok = word.start + p
    hi_ok = word.stop - 2 * p  # last admissible t (inclusive)
    if t_range is None:
        t_lo, t_hi = lo_ok, hi_ok + 1
    else:
        t_lo, t_hi = int(t_range[0]), int(t_range[1])
        if t_lo < lo_ok or t_hi - 1 > hi_ok:
            raise WindowTooShortError(
                f"t in [{t_lo}, {t_hi}) needs symbols on [{t_lo - p}, {t_hi - 1 + 2 * p}),"
                f" word covers [{word.start}, {word.stop})"
            )
    if t_hi <= t_lo:
        raise WindowTooShortError(f"no admissible t for p={p}")

    syms = word.symbols
    base = word.origin
    hits = []
    count = 0
    for t in range(t_lo, t_hi):
        i = t - base
        b0 = syms[i - p:i]
        b1 = syms[i:i + p]
        if b0 != b1:
            continue
        b2 = syms[i + p:i + 2 * p]
        if b1 != b2:
            continue
        count += 1
        if len(hits) < max_hits_stored:
            hits.append(t)
    scanned = t_hi - t_lo
    return GordonReport(
        p=p,
        t_range=(t_lo, t_hi),
        positions_scanned=scanned,
        hits=count,
        density=count / scanned,
        hit_positions=tuple(hits),
    )


# -- word files ------------------------------------------------------------------


def word_to_text(word: Word) -> str:
    """Header 'alphabet=... origin=...' then one symbol per token."""
    alph = word.alphabet()
    for s in alph:
        if any(ch.isspace() for ch in s) or "," in s:
            raise ValueError(f"symbol {s!r} cannot be written to a word file")
    lines = [f"alphabet={','.join(alph)} origin={word.origin}"]
    syms = word.symbols
    for i in range(0, len(syms), 80):
        lines.append(" ".join(syms[i:i + 80]))
    return "\n".join(lines) + "\n"


def word_from_text(text: str) -> Word:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty word file")
    header = lines[0].split()
    fields = dict(part.split("=", 1) for part in header if "=" in part)
    if "alphabet" not in fields or "origin" not in fields:
        raise ValueError("word file header must declare alphabet= and origin=")
    alphabet = set(fields["alphabet"].split(","))
    origin = int(fields["origin"])
    symbols: List[str] = []
    for line in lines[1:]:
        symbols.extend(line.split())
    stray = set(symbols) - alphabet
    if stray:
        raise ValueError(f"symbols {sorted(stray)} not in the declared alphabet")
    return Word(symbols, origin)


def save_word(word: Word, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(word_to_text(word))


def load_word(path) -> Word:
    with open(path, "r", encoding="utf-8") as fh:
        return word_from_text(fh.read())
