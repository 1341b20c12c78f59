"""Extended-exponent fixed-precision numbers and directed-rounding intervals.

An :class:`ExtFloat` is ``significand * 2**exponent`` with a ``precision``-bit
significand whose top bit is set; zero is the single value with a zero
significand. The exponent is an unbounded Python integer, so binomials near
10**16800 cost no more to add and compare than small ones.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import total_ordering

import gmpy2

from .config import DEFAULT_PRECISION_BITS, MIN_PRECISION_BITS
from .errors import ConfigurationError
from .exact_arith import ExactValue


class Ordering(Enum):
    LESS = "less"
    GREATER = "greater"
    OVERLAPPING = "overlapping"


def check_precision(precision: int) -> int:
    if precision < MIN_PRECISION_BITS:
        raise ConfigurationError(
            f"precision of {precision} bits is below the minimum of {MIN_PRECISION_BITS}"
        )
    return precision


@total_ordering
@dataclass(frozen=True, slots=True)
class ExtFloat:
    significand: int
    exponent: int
    precision: int = DEFAULT_PRECISION_BITS

    @classmethod
    def zero(cls, precision: int = DEFAULT_PRECISION_BITS) -> ExtFloat:
        return cls(0, 0, precision)

    @property
    def is_zero(self) -> bool:
        return self.significand == 0

    @property
    def magnitude(self) -> int:
        """Position of the leading bit: 2**(magnitude-1) <= value < 2**magnitude."""
        return self.exponent + self.significand.bit_length()

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.significand << self.exponent)
        return Fraction(self.significand, 1 << -self.exponent)

    def compare_exact(self, value: ExactValue) -> int:
        """Return -1, 0 or 1 as this number is below, equal to or above ``value``."""
        if self.exponent >= 0:
            left, right = self.significand << self.exponent, value
        else:
            left, right = self.significand, value << -self.exponent
        return (left > right) - (left < right)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, ExtFloat):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and not other.is_zero
        if self.magnitude != other.magnitude:
            return self.magnitude < other.magnitude
        shift = self.exponent - other.exponent
        if shift >= 0:
            return (self.significand << shift) < other.significand
        return self.significand < (other.significand << -shift)


def _round(mantissa: int, exponent: int, precision: int, up: bool) -> ExtFloat:
    """Normalize ``mantissa * 2**exponent`` to ``precision`` bits, truncating or rounding up."""
    if mantissa == 0:
        return ExtFloat.zero(precision)
    excess = mantissa.bit_length() - precision
    if excess <= 0:
        return ExtFloat(mantissa << -excess, exponent + excess, precision)
    significand = mantissa >> excess
    if up and mantissa & ((1 << excess) - 1):
        significand += 1
        if significand >> precision:
            significand >>= 1
            excess += 1
    return ExtFloat(significand, exponent + excess, precision)


def _add(a: ExtFloat, b: ExtFloat, up: bool) -> ExtFloat:
    if a.precision != b.precision:
        raise ConfigurationError("cannot combine numbers of different precision")
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.exponent < b.exponent:
        a, b = b, a
    gap = a.exponent - b.exponent
    if gap > a.precision + 2:
        # b lies below one unit in the last place of a: keep it as a sticky bit.
        return _round((a.significand << 2) | 1, a.exponent - 2, a.precision, up)
    return _round((a.significand << gap) + b.significand, b.exponent, a.precision, up)


def _scale(x: ExtFloat, num: int, den: int, up: bool) -> ExtFloat:
    if x.is_zero or num == 0:
        return ExtFloat.zero(x.precision)
    shift = x.precision + den.bit_length() + 2
    quotient, remainder = divmod((x.significand * num) << shift, den)
    if up and remainder:
        quotient += 1
    return _round(quotient, x.exponent - shift, x.precision, up)


@dataclass(frozen=True, slots=True)
class Interval:
    lo: ExtFloat
    hi: ExtFloat

    def __post_init__(self) -> None:
        if self.hi < self.lo:
            raise ValueError("interval lower bound exceeds its upper bound")

    @classmethod
    def zero(cls, precision: int = DEFAULT_PRECISION_BITS) -> Interval:
        z = ExtFloat.zero(precision)
        return cls(z, z)

    @property
    def precision(self) -> int:
        return self.lo.precision

    def contains(self, value: ExactValue) -> bool:
        return self.lo.compare_exact(value) <= 0 <= self.hi.compare_exact(value)

    def width(self) -> Fraction:
        return self.hi.to_fraction() - self.lo.to_fraction()


def ext_from_exact(value: ExactValue, precision: int = DEFAULT_PRECISION_BITS) -> Interval:
    """Tightest ``precision``-bit interval around an exact non-negative integer."""
    check_precision(precision)
    if value < 0:
        raise ValueError("only non-negative values are representable")
    return Interval(_round(value, 0, precision, False), _round(value, 0, precision, True))


def interval_add(a: Interval, b: Interval) -> Interval:
    return Interval(_add(a.lo, b.lo, False), _add(a.hi, b.hi, True))


def ext_scale(a: Interval, num: int, den: int) -> Interval:
    """Multiply an interval by the positive rational ``num / den``."""
    if num < 0 or den <= 0:
        raise ValueError("scale factor must be a non-negative rational with positive denominator")
    return Interval(_scale(a.lo, num, den, False), _scale(a.hi, num, den, True))


def binom_interval(n: int, k: int, precision: int = DEFAULT_PRECISION_BITS) -> Interval:
    """Evaluate C(n, k) as a running product in bounded precision.

    Every factor rounds both endpoints once or twice, so the width grows with
    min(k, n - k); that is the price of never forming the exact integer.
    """
    check_precision(precision)
    if k < 0 or k > n:
        return Interval.zero(precision)
    k = min(k, n - k)
    acc = ext_from_exact(1, precision)
    for j in range(1, k + 1):
        acc = ext_scale(acc, n - k + j, j)
    return acc


def interval_compare(a: Interval, b: Interval) -> Ordering:
    if a.hi < b.lo:
        return Ordering.LESS
    if a.lo > b.hi:
        return Ordering.GREATER
    return Ordering.OVERLAPPING


def ext_root_upper(x: ExtFloat, e: int) -> ExtFloat:
    """An upper bound for the real ``e``-th root of ``x``, at the precision of ``x``."""
    if e < 1:
        raise ValueError("root degree must be positive")
    if x.is_zero or e == 1:
        return x
    # Pad the radicand so the integer root keeps about ``precision`` bits.
    extra = e * x.precision
    t = x.exponent - extra
    r = t % e
    root, exact = gmpy2.iroot(x.significand << (extra + r), e)
    upper = int(root) + (0 if exact else 1)
    return _round(upper, (t - r) // e, x.precision, True)


def max_decimal_digits(precision: int) -> int:
    return math.floor(precision * math.log10(2)) - 1


def ext_to_decimal(x: ExtFloat, digits: int) -> str:
    """Render ``x`` as ``d.ddd...eE`` with ``digits`` significant digits, truncated."""
    limit = max_decimal_digits(x.precision)
    if digits < 1 or digits > limit:
        raise ConfigurationError(
            f"{digits} digits requested but {x.precision}-bit numbers support at most {limit}"
        )
    if x.is_zero:
        return _format_digits("0" * digits, 0)
    if x.exponent >= 0:
        num, den = x.significand << x.exponent, 1
    else:
        num, den = x.significand, 1 << -x.exponent
    # The float estimate can be off by one near a power of ten; the exact
    # quotient below settles it.
    decimal_exponent = math.floor(math.log10(x.significand) + x.exponent * math.log10(2))
    while True:
        shift = decimal_exponent - digits + 1
        if shift >= 0:
            leading = num // (den * 10**shift)
        else:
            leading = (num * 10**-shift) // den
        if leading >= 10**digits:
            decimal_exponent += 1
        elif leading < 10 ** (digits - 1):
            decimal_exponent -= 1
        else:
            return _format_digits(str(leading), decimal_exponent)


def _format_digits(text: str, decimal_exponent: int) -> str:
    mantissa = text[0] if len(text) == 1 else f"{text[0]}.{text[1:]}"
    return f"{mantissa}e{decimal_exponent}"


__all__ = [
    "ExtFloat",
    "Interval",
    "Ordering",
    "binom_interval",
    "check_precision",
    "ext_from_exact",
    "ext_root_upper",
    "ext_scale",
    "ext_to_decimal",
    "interval_add",
    "interval_compare",
    "max_decimal_digits",
]
