"""Continued fractions with honest precision accounting.

Exact inputs (Fraction, QuadSurd) expand by the Gauss map as far as asked.
Decimal strings carry finite information: '0.4142' only pins the number to
[0.41415, 0.41425], so the expansion runs as an interval continued fraction
and stops at the last digit both endpoints agree on; asking past that point
raises PrecisionExhaustedError instead of inventing terms.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .surds import QuadSurd


class PrecisionExhaustedError(ValueError):
    """The input does not determine that many continued-fraction terms."""


@dataclass(frozen=True)
class CFExpansion:
    """Leading terms [a0; a1, a2, ...] of a continued fraction.

    terminated means the expansion is complete (rational input); otherwise
    the coefficients are a trusted prefix of an infinite expansion.
    """

    coefficients: Tuple[int, ...]
    terminated: bool

    def __len__(self):
        return len(self.coefficients)

    def convergents(self) -> List[Tuple[int, int]]:
        """(p_k, q_k) for each k, with p_k/q_k in lowest terms."""
        out: List[Tuple[int, int]] = []
        p_prev, p = 0, 1
        q_prev, q = 1, 0
        for a in self.coefficients:
            p_prev, p = p, a * p + p_prev
            q_prev, q = q, a * q + q_prev
            out.append((p, q))
        return out

    def denominators(self) -> List[int]:
        return [q for _, q in self.convergents()]

    def value(self) -> Fraction:
        """Value of the finite expansion given by the stored coefficients."""
        if not self.coefficients:
            raise ValueError("empty expansion")
        acc = Fraction(self.coefficients[-1])
        for a in reversed(self.coefficients[:-1]):
            acc = a + 1 / acc
        return acc


ExactInput = Union[Fraction, QuadSurd, int, str]


def _gauss_exact(x: Union[Fraction, QuadSurd], n_terms: int) -> CFExpansion:
    coeffs: List[int] = []
    for _ in range(n_terms):
        if isinstance(x, QuadSurd):
            a = x.floor()
            r = x - a
            coeffs.append(a)
            if r.sign() == 0:
                return CFExpansion(tuple(coeffs), True)
            x = 1 / r
        else:
            from math import floor
            a = floor(x)
            r = x - a
            coeffs.append(a)
            if r == 0:
                return CFExpansion(tuple(coeffs), True)
            x = 1 / r
    return CFExpansion(tuple(coeffs), False)


def _gauss_interval(lo: Fraction, hi: Fraction, n_terms: int) -> CFExpansion:
    """Common prefix of the expansions of every number in [lo, hi]."""
    from math import floor
    coeffs: List[int] = []
    while len(coeffs) < n_terms:
        a_lo, a_hi = floor(lo), floor(hi)
        if a_lo != a_hi:
            break
        coeffs.append(a_lo)
        fl, fh = lo - a_lo, hi - a_lo
        if fl == 0 or fh == 0:
            # an endpoint is an integer: the next digit is unbounded on one
            # side, nothing further is trusted
            break
        lo, hi = 1 / fh, 1 / fl
    if len(coeffs) < n_terms:
        raise PrecisionExhaustedError(
            f"input determines only {len(coeffs)} of the requested "
            f"{n_terms} coefficients; supply more digits or an exact value"
        )
    return CFExpansion(tuple(coeffs), False)


def _decimal_interval(text: str) -> Tuple[Fraction, Fraction]:
    """[x - u/2, x + u/2] for a decimal literal, u one unit in the last place."""
    t = text.strip()
    x = Fraction(t)
    if "." in t:
        frac_digits = len(t.split(".", 1)[1])
    elif "e" in t.lower():
        raise ValueError("exponent notation not supported; write the digits out")
    else:
        frac_digits = 0
    half_ulp = Fraction(1, 2 * 10 ** frac_digits)
    return x - half_ulp, x + half_ulp


def continued_fraction(x: ExactInput, n_terms: int = 20) -> CFExpansion:
    """Continued fraction of x, honest about how many terms are knowable.

    Fraction/int/QuadSurd inputs expand exactly (terminating for rationals).
    A string is first tried as an exact token ('golden-1', 'sqrt2', '1/3');
    a decimal string such as '0.4142' is treated as known only to half a
    unit in the last place, and PrecisionExhaustedError signals requests
    beyond the trusted prefix.
    """
    if n_terms <= 0:
        raise ValueError("n_terms must be positive")
    if isinstance(x, str):
        text = x.strip()
        from .surds import parse_number
        try:
            exact = parse_number(text)
        except ValueError:
            exact = None
        if exact is not None:
            if isinstance(exact, Fraction) and ("." in text):
                lo, hi = _decimal_interval(text)
                return _gauss_interval(lo, hi, n_terms)
            x = exact
        else:
            raise ValueError(f"cannot parse {text!r}")
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, QuadSurd) and x.is_rational:
        x = x.as_fraction()
    if isinstance(x, (Fraction, QuadSurd)):
        return _gauss_exact(x, n_terms)
    raise TypeError(f"unsupported input type {type(x).__name__}")


@dataclass(frozen=True)
class CoefficientBoundReport:
    """Census of partial quotients a_1, a_2, ... against a lower bound.

    positions lists the indices k (1-based within the expansion) with
    a_k >= threshold; all_satisfy is true when every checked quotient
    clears the bound.
    """

    threshold: int
    terms_checked: int
    count_at_or_above: int
    positions: Tuple[int, ...]
    min_coefficient: Optional[int]
    all_satisfy: bool
    first_violation_index: Optional[int]


def coefficient_bound_report(cf: CFExpansion, threshold: int = 4) -> CoefficientBoundReport:
    """Count the partial quotients from a_1 on that reach a lower bound.

    The integer part a_0 is excluded.  An empty tail (integer input)
    vacuously satisfies the bound.
    """
    tail = cf.coefficients[1:]
    if not tail:
        return CoefficientBoundReport(threshold, 0, 0, (), None, True, None)
    positions = tuple(i for i, a in enumerate(tail, start=1) if a >= threshold)
    mn = min(tail)
    if mn >= threshold:
        return CoefficientBoundReport(threshold, len(tail), len(positions),
                                      positions, mn, True, None)
    idx = next(i for i, a in enumerate(tail, start=1) if a < threshold)
    return CoefficientBoundReport(threshold, len(tail), len(positions),
                                  positions, mn, False, idx)
