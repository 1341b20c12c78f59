"""Images of n -> C(n, k) over the field with p elements."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np
from sympy import isprime
from sympy.ntheory import legendre_symbol

from ..errors import ConfigurationError


@dataclass(frozen=True)
class ImageStats:
    k: int
    p: int
    image: frozenset[int]

    @property
    def size(self) -> int:
        """A(k, p)."""
        return len(self.image)

    @property
    def density(self) -> Fraction:
        return Fraction(self.size, self.p)


def _check_modulus(k: int, p: int) -> None:
    if k < 1:
        raise ConfigurationError(f"k must be positive, got {k}")
    if p <= k:
        raise ConfigurationError(f"p = {p} must exceed k = {k} so that k! is invertible")
    if not isprime(p):
        raise ConfigurationError(f"{p} is not prime")


def binomial_residues(k: int, p: int) -> np.ndarray:
    """C(a, k) mod p for a = 0..p-1, as the polynomial a(a-1)...(a-k+1)/k!.

    For every integer n >= 0 the residue of C(n, k) is entry ``n % p``.
    """
    _check_modulus(k, p)
    a = np.arange(p, dtype=np.int64)
    acc = np.ones(p, dtype=np.int64)
    for j in range(k):
        acc = acc * ((a - j) % p) % p
    inverse = pow(factorial(k), -1, p)
    return acc * inverse % p


def image_mod_p(k: int, p: int) -> ImageStats:
    residues = binomial_residues(k, p)
    return ImageStats(k, p, frozenset(int(r) for r in np.unique(residues)))


def closed_form_A(k: int, p: int) -> int:
    """Known closed forms for A(3, p) (p >= 5) and A(4, p) (p > 5)."""
    if k == 3 and p >= 5 and isprime(p):
        return (2 * p + 1) // 3 if p % 6 == 1 else (2 * p - 1) // 3
    if k == 4 and p > 5 and isprime(p):

        def chi(x: int) -> int:
            return int(legendre_symbol(x % p, p))

        return (3 * p + 4 + chi(-1) + 2 * chi(5) - 2 * chi(10)) // 8
    raise ConfigurationError(f"no closed form for A({k}, {p})")


def has_closed_form(k: int, p: int) -> bool:
    return (k == 3 and p >= 5) or (k == 4 and p > 5)


def density_limit(k: int) -> Fraction:
    """Limit of A(k, p)/p: the general-polynomial density for odd k, the conjectured one for even k."""
    if k < 1:
        raise ConfigurationError(f"k must be positive, got {k}")
    if k % 2:
        return sum((Fraction((-1) ** (i - 1), factorial(i)) for i in range(1, k + 1)), Fraction(0))
    return sum(
        (Fraction((-1) ** (i - 1), 2**i * factorial(i)) for i in range(1, k // 2 + 1)),
        Fraction(0),
    )


__all__ = [
    "ImageStats",
    "binomial_residues",
    "closed_form_A",
    "density_limit",
    "has_closed_form",
    "image_mod_p",
]
