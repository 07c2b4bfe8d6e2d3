"""Exact lengths: rational combinations over a declared basis of reals.

Positions, gaps and interval lengths in this package are never bare floats.
They are rational-coefficient combinations of a small set of named positive
reals, e.g. {1, golden}.  Equality is decided coefficient-wise; floats enter
only when two values have to be *ordered*, and any ordering that comes out
within ``TIE_GUARD`` of a tie without being an exact coefficient match is
rejected instead of silently resolved.
"""
from __future__ import annotations

from fractions import Fraction

TIE_GUARD = 1e-12

_GOLDEN_VALUE = (1.0 + 5.0 ** 0.5) / 2.0


class BasisMismatchError(ValueError):
    """Raised when combining lengths declared over different bases."""


class AmbiguousOrderError(ArithmeticError):
    """Two distinct combinations evaluate within the float tie guard.

    The basis is too coarse to order these two values reliably; refine it
    (declare the offending real as its own basis element) instead of trusting
    a float comparison at the 1e-12 level.
    """


class Basis:
    """Ordered list of named positive reals.

    Element 0 is always the rational unit ``"1"`` with value 1.0, so plain
    integers and fractions can be coerced onto any basis.
    """

    __slots__ = ("names", "values")

    def __init__(self, names, values):
        names = tuple(str(n) for n in names)
        values = tuple(float(v) for v in values)
        if len(names) != len(values):
            raise ValueError("basis names and values differ in length")
        if not names or names[0] != "1" or values[0] != 1.0:
            raise ValueError('basis element 0 must be the rational unit "1" = 1.0')
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        if any(v <= 0.0 for v in values):
            raise ValueError("basis values must be positive reals")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("Basis is immutable")

    def __eq__(self, other):
        if not isinstance(other, Basis):
            return NotImplemented
        return self.names == other.names and self.values == other.values

    def __hash__(self):
        return hash((self.names, self.values))

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        inner = ", ".join(f"{n}={v!r}" for n, v in zip(self.names, self.values))
        return f"Basis({inner})"

    def length(self, *coeffs) -> "ExactLength":
        """Build a length from positional rational coefficients."""
        if len(coeffs) > len(self.names):
            raise ValueError("more coefficients than basis elements")
        cs = tuple(Fraction(c) for c in coeffs)
        cs = cs + (Fraction(0),) * (len(self.names) - len(cs))
        return ExactLength(self, cs)

    def from_name_map(self, mapping) -> "ExactLength":
        cs = [Fraction(0)] * len(self.names)
        for name, c in mapping.items():
            try:
                cs[self.names.index(name)] = Fraction(c)
            except ValueError:
                raise KeyError(f"{name!r} is not a basis element of {self!r}") from None
        return ExactLength(self, tuple(cs))

    def rational(self, q) -> "ExactLength":
        return self.length(Fraction(q))

    @property
    def zero(self) -> "ExactLength":
        return self.length()

    @property
    def one(self) -> "ExactLength":
        return self.length(1)


def unit_basis() -> Basis:
    """Basis {1}: plain rational lengths."""
    return Basis(("1",), (1.0,))


def golden_basis() -> Basis:
    """Basis {1, golden} with golden = (1+sqrt 5)/2."""
    return Basis(("1", "golden"), (1.0, _GOLDEN_VALUE))


class ExactLength:
    """A rational-coefficient combination of the basis reals.

    Immutable and hashable; arithmetic is closed under +, -, and scaling by
    rationals.  Ordering goes through the float evaluation with the tie
    guard, equality never does.
    """

    __slots__ = ("basis", "coeffs", "value")

    def __init__(self, basis: Basis, coeffs):
        coeffs = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coeffs)
        if len(coeffs) != len(basis.names):
            raise ValueError("coefficient count does not match basis size")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(
            self, "value", sum(float(c) * v for c, v in zip(coeffs, basis.values))
        )

    def __setattr__(self, name, value):
        raise AttributeError("ExactLength is immutable")

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "ExactLength") -> None:
        if self.basis != other.basis:
            raise BasisMismatchError(
                f"cannot combine lengths over {self.basis!r} and {other.basis!r}"
            )

    def __add__(self, other):
        if not isinstance(other, ExactLength):
            return NotImplemented
        self._check(other)
        return ExactLength(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, ExactLength):
            return NotImplemented
        self._check(other)
        return ExactLength(self.basis, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return ExactLength(self.basis, tuple(-a for a in self.coeffs))

    def __mul__(self, q):
        if isinstance(q, float):
            raise TypeError("scale ExactLength by int or Fraction, not float")
        q = Fraction(q)
        return ExactLength(self.basis, tuple(a * q for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, q):
        if isinstance(q, float):
            raise TypeError("divide ExactLength by int or Fraction, not float")
        return self * (Fraction(1) / Fraction(q))

    # -- ordering -----------------------------------------------------------

    def _cmp(self, other: "ExactLength") -> int:
        self._check(other)
        if self.coeffs == other.coeffs:
            return 0
        d = self.value - other.value
        if abs(d) <= TIE_GUARD:
            raise AmbiguousOrderError(
                f"ordering of {self!r} vs {other!r} is within the {TIE_GUARD} tie "
                "guard; refine the basis"
            )
        return -1 if d < 0 else 1

    def __eq__(self, other):
        if not isinstance(other, ExactLength):
            return NotImplemented
        return self.basis == other.basis and self.coeffs == other.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __lt__(self, other):
        if not isinstance(other, ExactLength):
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        if not isinstance(other, ExactLength):
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if not isinstance(other, ExactLength):
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        if not isinstance(other, ExactLength):
            return NotImplemented
        return self._cmp(other) >= 0

    def sign(self) -> int:
        """Exact sign: 0 only for the exact zero combination."""
        if all(c == 0 for c in self.coeffs):
            return 0
        if abs(self.value) <= TIE_GUARD:
            raise AmbiguousOrderError(
                f"sign of {self!r} is within the tie guard; refine the basis"
            )
        return -1 if self.value < 0 else 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} has irrational basis components")
        return self.coeffs[0]

    # -- misc ---------------------------------------------------------------

    def __hash__(self):
        return hash((self.coeffs, self.basis.names))

    def __float__(self):
        return self.value

    def __bool__(self):
        return not self.is_zero()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        parts = []
        for c, name in zip(self.coeffs, self.basis.names):
            if c == 0:
                continue
            parts.append(str(c) if name == "1" else f"{c}*{name}")
        return "<" + (" + ".join(parts) if parts else "0") + ">"


def as_length(x, basis: Basis) -> ExactLength:
    """Coerce ``x`` onto ``basis``.

    Accepts ExactLength (basis-checked), int, Fraction, strings, and floats.
    A float is taken at its exact binary value, so only pass floats that are
    meant literally (0.5 is fine, 0.1 is 0.1000000000000000055...).  Strings
    may be rationals ("3/2", "0.25") or signed sums of basis-element terms
    ("golden", "2*golden", "1/2 + golden").
    """
    if isinstance(x, ExactLength):
        if x.basis != basis:
            raise BasisMismatchError(f"{x!r} is not over {basis!r}")
        return x
    if isinstance(x, str):
        return _parse_length(x, basis)
    return basis.rational(Fraction(x))


def _parse_length(text: str, basis: Basis) -> ExactLength:
    cs = [Fraction(0)] * len(basis.names)
    body = text.replace("-", "+-").replace(" ", "")
    if body.startswith("+"):
        body = body[1:]
    if not body:
        raise ValueError(f"cannot parse length {text!r}")
    for term in body.split("+"):
        if not term:
            raise ValueError(f"cannot parse length {text!r}")
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        if "*" in term:
            coef_s, name = term.split("*", 1)
            coef = Fraction(coef_s)
        elif term in basis.names:
            coef, name = Fraction(1), term
        else:
            coef, name = Fraction(term), "1"
        if name not in basis.names:
            raise ValueError(f"{name!r} is not an element of {basis!r}")
        cs[basis.names.index(name)] += -coef if neg else coef
    return ExactLength(basis, tuple(cs))


def sort_lengths(values) -> list:
    """Sort ExactLengths by float key, then verify neighbours exactly.

    Any neighbouring pair inside the tie guard with different coefficients
    raises AmbiguousOrderError; exact duplicates are allowed and kept.
    """
    out = sorted(values, key=lambda v: v.value)
    for u, v in zip(out, out[1:]):
        if u.coeffs != v.coeffs and v.value - u.value <= TIE_GUARD:
            raise AmbiguousOrderError(
                f"positions {u!r} and {v!r} are within the tie guard"
            )
    return out
