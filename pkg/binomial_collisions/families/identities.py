"""Polynomial identities C(n(x), k) + C(y(x), 2) = C(a(x), 2).

Each identity yields, for every integer x >= 2, a near collision whose
difference d = C(y(x), 2) is small compared to the binomials: the quality of
an identity is the degree of the binomials in x divided by the degree of d.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import floor

from ..errors import ConfigurationError, VerificationError
from ..exact_arith import binom_exact

logger = logging.getLogger(__name__)

# Coefficients are listed from the highest power of x down to the constant.
Polynomial = tuple[int, ...]


def evaluate(poly: Polynomial, x: int) -> int:
    """Horner evaluation over exact integers."""
    return reduce(lambda acc, c: acc * x + c, poly, 0)


def degree(poly: Polynomial) -> int:
    for index, c in enumerate(poly):
        if c:
            return len(poly) - 1 - index
    return 0


@dataclass(frozen=True)
class IdentityFamily:
    id: int
    k_left: int
    n_poly: Polynomial
    d_arg_poly: Polynomial
    a_poly: Polynomial


FAMILIES: dict[int, IdentityFamily] = {
    family.id: family
    for family in (
        IdentityFamily(1, 3, (12, -12, 3), (1, 0), (24, -36, 15, -1)),
        IdentityFamily(2, 3, (12, -12, 5), (1, 0), (24, -36, 21, -4)),
        IdentityFamily(3, 5, (60, -60, 15), (1, 0), (3600, -9000, 8700, -4050, 905, -77)),
        IdentityFamily(4, 5, (60, -60, 19), (1, 0), (3600, -9000, 9300, -4950, 1355, -152)),
        IdentityFamily(
            5, 5, (240, -240, 62), (3, -1), (115200, -288000, 288000, -144000, 35995, -3597)
        ),
        IdentityFamily(
            6,
            9,
            (11340, 11340, 2835),
            (22680, 34020, 17001, 2831),
            (
                4134207084840000,
                18603931881780000,
                37201301530092000,
                43386206573682000,
                32522432635935900,
                16249739546454750,
                5411800833695550,
                1158443736409575,
                144626588131776,
                8023467184451,
            ),
        ),
        IdentityFamily(
            7,
            9,
            (11340, 11340, 2843),
            (22680, 34020, 17019, 2840),
            (
                4134207084840000,
                18603931881780000,
                37214425997028000,
                43432142207958000,
                32591336087349900,
                16307159089299750,
                5440510606648950,
                1167056670132675,
                146062077851076,
                8126002273751,
            ),
        ),
    )
}


def get_family(family_id: int) -> IdentityFamily:
    try:
        return FAMILIES[family_id]
    except KeyError:
        raise ConfigurationError(f"unknown identity family {family_id}; expected 1..{len(FAMILIES)}") from None


@dataclass(frozen=True)
class IdentityEvaluation:
    family: int
    x: int
    n: int
    k: int
    d_arg: int
    a: int
    left_big: int
    left_small: int
    right: int

    @property
    def holds(self) -> bool:
        return self.left_big + self.left_small == self.right

    @property
    def d(self) -> int:
        return self.left_small

    @property
    def is_trivial(self) -> bool:
        """d = 0: the identity degenerates to an equality, not a near collision."""
        return self.d == 0

    def admissible(self, exponent: int) -> bool:
        return self.d > 0 and self.right >= self.d**exponent


def identity_eval(family_id: int, x: int) -> IdentityEvaluation:
    family = get_family(family_id)
    if x < 1:
        raise ConfigurationError(f"x must be at least 1, got {x}")
    n = evaluate(family.n_poly, x)
    d_arg = evaluate(family.d_arg_poly, x)
    a = evaluate(family.a_poly, x)
    return IdentityEvaluation(
        family=family.id,
        x=x,
        n=n,
        k=family.k_left,
        d_arg=d_arg,
        a=a,
        left_big=binom_exact(n, family.k_left),
        left_small=binom_exact(d_arg, 2),
        right=binom_exact(a, 2),
    )


def identity_quality(family_id: int) -> Fraction:
    family = get_family(family_id)
    big = family.k_left * degree(family.n_poly)
    if big != 2 * degree(family.a_poly):
        raise VerificationError(
            f"family {family_id}: degree {big} on the left but {2 * degree(family.a_poly)} on the right"
        )
    return Fraction(big, 2 * degree(family.d_arg_poly))


def quality_exponent(family_id: int) -> int:
    """Largest integer exponent e the quality guarantees asymptotically: C(a, 2) >= d**e."""
    return floor(identity_quality(family_id))


@dataclass
class IdentityReport:
    family: int
    x_max: int
    exponent: int
    checked: int = 0
    failures: list[int] = field(default_factory=list)
    inadmissible: list[int] = field(default_factory=list)
    trivial: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.inadmissible


def verify_identity(family_id: int, x_max: int, exponent: int | None = None) -> IdentityReport:
    """Check the identity exactly for 1 <= x <= x_max.

    For x >= 2 the triple must also be a near collision with
    C(a, 2) >= d**exponent; the default exponent is the family's quality
    rounded down.
    """
    if exponent is None:
        exponent = quality_exponent(family_id)
    report = IdentityReport(family_id, x_max, exponent)
    for x in range(1, x_max + 1):
        evaluation = identity_eval(family_id, x)
        report.checked += 1
        if not evaluation.holds:
            report.failures.append(x)
        if evaluation.is_trivial:
            report.trivial.append(x)
        elif x >= 2 and not evaluation.admissible(exponent):
            report.inadmissible.append(x)
    if report.failures:
        logger.warning("family %d fails at x = %s", family_id, report.failures[:10])
    return report


__all__ = [
    "FAMILIES",
    "IdentityEvaluation",
    "IdentityFamily",
    "IdentityReport",
    "Polynomial",
    "degree",
    "evaluate",
    "get_family",
    "identity_eval",
    "identity_quality",
    "quality_exponent",
    "verify_identity",
]
