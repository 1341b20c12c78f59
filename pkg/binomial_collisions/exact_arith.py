"""Exact binomial coefficients, Pascal updates and inversion."""
from __future__ import annotations

from typing import NamedTuple

import gmpy2

# Exact values are plain Python integers.
ExactValue = int


class BinomPair(NamedTuple):
    """A row/index pair identifying the binomial coefficient C(n, k)."""

    n: int
    k: int

    @property
    def is_admissible(self) -> bool:
        """True when 2 <= k <= n/2, the normalization used by every search."""
        return self.k >= 2 and 2 * self.k <= self.n

    def value(self) -> ExactValue:
        return binom_exact(self.n, self.k)


def binom_exact(n: int, k: int) -> ExactValue:
    """Return C(n, k); zero when k > n and one when k = 0."""
    if k < 0 or k > n:
        return 0
    return int(gmpy2.comb(n, min(k, n - k)))


def pascal_step(current: ExactValue, neighbor: ExactValue) -> ExactValue:
    """C(n+k, k) and C(n+k, k+1) give C(n+k+1, k+1)."""
    return current + neighbor


def is_binomial(v: ExactValue, k: int) -> int | None:
    """Return the n >= 2k with C(n, k) = v, or None when there is none.

    C(n, k) is strictly increasing in n for n >= k, so an upper bound found by
    doubling from 2k followed by a binary search settles the question exactly.
    """
    lo = 2 * k
    first = gmpy2.comb(lo, k)
    if first >= v:
        return lo if first == v else None
    hi = 2 * lo
    while gmpy2.comb(hi, k) < v:
        lo, hi = hi, 2 * hi
    # Invariant: C(lo, k) < v <= C(hi, k).
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if gmpy2.comb(mid, k) < v:
            lo = mid
        else:
            hi = mid
    return hi if gmpy2.comb(hi, k) == v else None


__all__ = ["BinomPair", "ExactValue", "binom_exact", "is_binomial", "pascal_step"]
