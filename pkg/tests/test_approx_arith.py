from __future__ import annotations

import random
from fractions import Fraction

import gmpy2
import pytest

from binomial_collisions.approx_arith import (
    ExtFloat,
    Interval,
    Ordering,
    binom_interval,
    check_precision,
    ext_from_exact,
    ext_root_upper,
    ext_scale,
    ext_to_decimal,
    interval_add,
    interval_compare,
    max_decimal_digits,
)
from binomial_collisions.errors import ConfigurationError
from binomial_collisions.exact_arith import binom_exact

# C(102091, 12877) and C(200954, 9642) agree to 15 significant digits.
ALMOST_BIG = (102091, 12877)
ALMOST_SMALL = (200954, 9642)


def test_small_values_convert_exactly() -> None:
    interval = ext_from_exact(1024)
    assert interval.lo == interval.hi
    assert interval.lo.significand.bit_length() == 128
    assert interval.contains(1024)
    assert interval.width() == 0


def test_rounding_brackets_the_value() -> None:
    value = 2**200 + 1
    interval = ext_from_exact(value, 53)
    assert interval.lo.compare_exact(value) < 0 < interval.hi.compare_exact(value)
    assert interval.width() == Fraction(2 ** (201 - 53))


def test_zero_is_representable() -> None:
    interval = ext_from_exact(0)
    assert interval.lo.is_zero and interval.hi.is_zero
    assert ext_to_decimal(interval.lo, 4) == "0.000e0"


def test_precision_below_minimum_is_rejected() -> None:
    with pytest.raises(ConfigurationError):
        check_precision(4)
    with pytest.raises(ConfigurationError):
        ext_from_exact(10, 4)


def test_interval_rejects_reversed_bounds() -> None:
    a = ext_from_exact(10).lo
    b = ext_from_exact(20).lo
    with pytest.raises(ValueError):
        Interval(b, a)


def test_ext_float_ordering_follows_values() -> None:
    values = [0, 1, 2, 3, 1000, 2**64, 2**64 + 2**20, 10**40]
    floats = [ext_from_exact(v, 32).lo for v in values]
    assert floats == sorted(floats)
    assert ExtFloat.zero() < floats[1]
    assert not floats[3] < floats[3]


def test_addition_contains_the_exact_sum() -> None:
    rng = random.Random(2024)
    for precision in (8, 24, 53, 128):
        for _ in range(200):
            a = rng.getrandbits(rng.randrange(1, 400))
            b = rng.getrandbits(rng.randrange(1, 400))
            total = interval_add(ext_from_exact(a, precision), ext_from_exact(b, precision))
            assert total.contains(a + b)


def test_addition_keeps_a_sticky_bit_for_tiny_operands() -> None:
    big = ext_from_exact(2**300, 16)
    total = interval_add(big, ext_from_exact(1, 16))
    assert total.lo == big.lo
    assert big.hi < total.hi
    assert total.contains(2**300 + 1)


def test_repeated_addition_widens_monotonically() -> None:
    rng = random.Random(7)
    acc = ext_from_exact(0, 24)
    exact = 0
    previous_width = Fraction(0)
    for _ in range(100):
        step = rng.getrandbits(60) | 1
        acc = interval_add(acc, ext_from_exact(step, 24))
        exact += step
        assert acc.contains(exact)
        assert acc.width() >= previous_width
        previous_width = acc.width()


def test_scale_contains_the_exact_quotient() -> None:
    interval = ext_scale(ext_from_exact(3**50, 53), 7, 3)
    assert interval.lo.to_fraction() <= Fraction(7 * 3**50, 3) <= interval.hi.to_fraction()
    with pytest.raises(ValueError):
        ext_scale(interval, 1, 0)


def test_binom_interval_contains_exact_values() -> None:
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randrange(4, 3000)
        k = rng.randrange(0, n + 1)
        assert binom_interval(n, k, 64).contains(binom_exact(n, k))
    assert binom_interval(5, 7).width() == 0


@pytest.mark.parametrize(
    ("a", "b", "expected"),
    [(10, 20, Ordering.LESS), (20, 10, Ordering.GREATER), (15, 15, Ordering.OVERLAPPING)],
)
def test_interval_compare(a: int, b: int, expected: Ordering) -> None:
    assert interval_compare(ext_from_exact(a), ext_from_exact(b)) is expected


def test_interval_compare_agrees_with_exact_comparison() -> None:
    rng = random.Random(23)
    decided = 0
    for _ in range(500):
        a = rng.getrandbits(rng.randrange(2, 200)) + 1
        b = a + rng.randrange(-(a >> rng.randrange(1, 40)), (a >> rng.randrange(1, 40)) + 1)
        ordering = interval_compare(ext_from_exact(a, 24), ext_from_exact(b, 24))
        if ordering is Ordering.LESS:
            assert a < b
        elif ordering is Ordering.GREATER:
            assert a > b
        else:
            assert abs(a - b) <= max(a, b) >> 20
            continue
        decided += 1
    assert decided > 100


def test_almost_collision_separates_at_128_bits() -> None:
    big = binom_interval(*ALMOST_BIG, 128)
    small = binom_interval(*ALMOST_SMALL, 128)
    assert interval_compare(big, small) is Ordering.GREATER
    assert ext_to_decimal(big.lo, 16) == "1.256839391954534e16800"
    assert ext_to_decimal(small.lo, 16) == "1.256839391954529e16800"
    assert ext_to_decimal(big.hi, 16) == "1.256839391954534e16800"


def test_almost_collision_overlaps_at_53_bits_and_exact_decides() -> None:
    big = binom_interval(*ALMOST_BIG, 53)
    small = binom_interval(*ALMOST_SMALL, 53)
    assert interval_compare(big, small) is Ordering.OVERLAPPING
    exact_big = binom_exact(*ALMOST_BIG)
    exact_small = binom_exact(*ALMOST_SMALL)
    assert big.contains(exact_big) and small.contains(exact_small)
    assert exact_big > exact_small


def test_decimal_rendering() -> None:
    assert max_decimal_digits(128) == 37
    assert max_decimal_digits(53) == 14
    assert ext_to_decimal(ext_from_exact(1024).lo, 4) == "1.024e3"
    assert ext_to_decimal(ext_from_exact(999999).lo, 3) == "9.99e5"
    assert ext_to_decimal(ext_from_exact(7).lo, 1) == "7e0"
    with pytest.raises(ConfigurationError):
        ext_to_decimal(ext_from_exact(1024, 53).lo, 16)


def test_decimal_rendering_is_within_one_unit_of_the_value() -> None:
    rng = random.Random(31)
    for _ in range(200):
        value = rng.getrandbits(rng.randrange(4, 600)) | 1
        digits = rng.randrange(1, 30)
        text = ext_to_decimal(ext_from_exact(value, 128).lo, digits)
        mantissa, _, exponent = text.partition("e")
        leading = mantissa.replace(".", "")
        assert len(leading) == digits and leading[0] != "0"
        unit = Fraction(10) ** (int(exponent) - digits + 1)
        assert int(leading) * unit <= value < (int(leading) + 2) * unit


def test_root_upper_bound() -> None:
    rng = random.Random(11)
    for _ in range(100):
        value = rng.getrandbits(rng.randrange(2, 500))
        e = rng.choice((2, 3, 5))
        bound = ext_root_upper(ext_from_exact(value, 64).hi, e)
        root = int(gmpy2.iroot(value, e)[0])
        assert bound.to_fraction() ** e >= value
        assert bound.to_fraction() <= root + 2
