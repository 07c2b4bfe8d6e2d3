"""Exact arithmetic in quadratic fields Q(sqrt(d)).

Circle-map words and continued fractions need exact comparisons of numbers
like (sqrt(5)-1)/2 against rationals; floating point cannot settle ties such
as n*alpha mod 1 == 1 - beta.  A QuadSurd is a + b*sqrt(d) with rational a,
b and a fixed square-free d, supporting field arithmetic, exact ordering and
an exact floor.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union


def _square_free(d: int) -> int:
    if d <= 0:
        raise ValueError("d must be a positive integer")
    out = 1
    n = d
    f = 2
    while f * f <= n:
        count = 0
        while n % f == 0:
            n //= f
            count += 1
        if count % 2:
            out *= f
        f += 1
    return out * n


class QuadSurd:
    """a + b*sqrt(d) with a, b in Q and d a fixed square-free integer > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=5):
        d = int(d)
        sf = _square_free(d)
        if sf != d:
            raise ValueError(f"d={d} is not square-free (use {sf})")
        if d == 1:
            raise ValueError("d=1 is rational; use Fraction")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    # -- helpers ---------------------------------------------------------

    def _pair(self, other):
        """Bring self and other into a common field; None when not coercible."""
        if isinstance(other, (int, Fraction)):
            other = QuadSurd(other, 0, self.d)
        elif not isinstance(other, QuadSurd):
            return None
        if self.d == other.d:
            return self, other
        if other.b == 0:
            return self, QuadSurd(other.a, 0, self.d)
        if self.b == 0:
            return QuadSurd(self.a, 0, other.d), other
        raise ValueError(f"mixed radicals sqrt({self.d}), sqrt({other.d})")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.d)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadSurd(s.a + o.a, s.b + o.b, s.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadSurd(s.a - o.a, s.b - o.b, s.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        return QuadSurd(
            s.a * o.a + s.b * o.b * s.d,
            s.a * o.b + s.b * o.a,
            s.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        s, o = pair
        norm = o.a * o.a - o.b * o.b * o.d
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        inv = QuadSurd(o.a / norm, -o.b / norm, o.d)
        return s * inv

    def __rtruediv__(self, other):
        return QuadSurd(other, 0, self.d) / self

    # -- exact ordering ----------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        # compare a against -b*sqrt(d): square both sides, mind the signs
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        lhs = a * a
        rhs = b * b * self.d
        if lhs == rhs:
            return 0
        bigger_rational = lhs > rhs
        if a > 0:  # b < 0
            return 1 if bigger_rational else -1
        return -1 if bigger_rational else 1  # a < 0, b > 0

    def __eq__(self, other):
        try:
            pair = self._pair(other)
        except ValueError:
            return False
        if pair is None:
            return NotImplemented
        s, o = pair
        return s.a == o.a and s.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp_sign(self, other) -> int:
        pair = self._pair(other)
        if pair is None:
            raise TypeError(f"cannot compare QuadSurd with {type(other).__name__}")
        s, o = pair
        return (s - o).sign()

    def __lt__(self, other):
        return self._cmp_sign(other) < 0

    def __le__(self, other):
        return self._cmp_sign(other) <= 0

    def __gt__(self, other):
        return self._cmp_sign(other) > 0

    def __ge__(self, other):
        return self._cmp_sign(other) >= 0

    # -- floor / mod -------------------------------------------------------

    def __floor__(self) -> int:
        if self.b == 0:
            return math.floor(self.a)
        n = math.floor(float(self))  # candidate, then verify exactly
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def floor(self) -> int:
        return self.__floor__()

    def frac(self) -> "QuadSurd":
        """Fractional part, exactly in [0, 1)."""
        return self - self.__floor__()

    def mod1(self) -> "QuadSurd":
        return self.frac()

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError("not rational")
        return self.a

    def __repr__(self):
        if self.b == 0:
            return f"QuadSurd({self.a})"
        return f"QuadSurd({self.a} + {self.b}*sqrt({self.d}))"


_GOLDEN = QuadSurd(Fraction(1, 2), Fraction(1, 2), 5)

_SURD_TOKEN = re.compile(
    r"^\s*(?P<sign>[+-]?)\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?"
    r"(?:sqrt(?P<d>\d+)|(?P<golden>golden))\s*"
    r"(?:(?P<tail_sign>[+-])\s*(?P<tail>\d+(?:/\d+)?(?:\.\d+)?))?\s*$"
)


def parse_number(text: str) -> Union[Fraction, QuadSurd]:
    """Parse 'sqrt5-2', 'golden-1', '1/3', '0.25', '2*sqrt2+1/2' exactly.

    Plain rationals come back as Fraction; anything mentioning sqrtD or
    'golden' as a QuadSurd.  Decimal literals are read at face value
    (0.1 -> 1/10), not as binary floats.
    """
    text = text.strip()
    m = _SURD_TOKEN.match(text)
    if m:
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        if m.group("golden"):
            base = _GOLDEN * coef
        else:
            d = int(m.group("d"))
            if _square_free(d) != d:
                raise ValueError(f"sqrt{d} is not square-free")
            base = QuadSurd(0, coef, d)
        if m.group("tail"):
            tail = Fraction(m.group("tail"))
            if m.group("tail_sign") == "-":
                tail = -tail
            return base + tail
        return base
    try:
        return Fraction(text)
    except ValueError:
        pass
    raise ValueError(f"cannot parse {text!r} as an exact number")


def golden() -> QuadSurd:
    """(1 + sqrt(5)) / 2."""
    return _GOLDEN
