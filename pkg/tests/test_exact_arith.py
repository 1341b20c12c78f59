from __future__ import annotations

import math
import random

import pytest

from binomial_collisions.exact_arith import BinomPair, binom_exact, is_binomial, pascal_step


@pytest.mark.parametrize(
    ("n", "k", "expected"),
    [(5, 2, 10), (10, 0, 1), (10, 10, 1), (3, 5, 0), (4, -1, 0), (16, 2, 120), (10, 3, 120)],
)
def test_binom_exact_small_values(n: int, k: int, expected: int) -> None:
    assert binom_exact(n, k) == expected


def test_binom_exact_matches_math_comb() -> None:
    rng = random.Random(1234)
    for _ in range(200):
        n = rng.randrange(0, 400)
        k = rng.randrange(0, n + 1)
        assert binom_exact(n, k) == math.comb(n, k)
    assert isinstance(binom_exact(200, 100), int)


def test_pascal_step_builds_the_next_row() -> None:
    for n in range(2, 40):
        for k in range(0, n - 1):
            assert pascal_step(binom_exact(n, k), binom_exact(n, k + 1)) == binom_exact(n + 1, k + 1)


@pytest.mark.parametrize(
    ("value", "k", "expected"),
    [(120, 2, 16), (120, 3, 10), (121, 2, None), (6, 2, 4), (3, 2, None), (1, 2, None), (3003, 5, 15), (3003, 6, 14)],
)
def test_is_binomial(value: int, k: int, expected: int | None) -> None:
    assert is_binomial(value, k) == expected


def test_is_binomial_round_trips_large_rows() -> None:
    rng = random.Random(99)
    for _ in range(50):
        k = rng.randrange(2, 30)
        n = rng.randrange(2 * k, 5000)
        value = binom_exact(n, k)
        assert is_binomial(value, k) == n
        assert is_binomial(value + 1, k) is None


def test_binom_exact_is_symmetric() -> None:
    for n in range(0, 80):
        for k in range(0, n + 1):
            assert binom_exact(n, k) == binom_exact(n, n - k)


def test_is_binomial_over_a_full_grid() -> None:
    for k in range(2, 11):
        rows = {binom_exact(n, k): n for n in range(2 * k, 202)}
        for n in range(2 * k, 201):
            value = binom_exact(n, k)
            assert is_binomial(value, k) == n
            assert is_binomial(value + 1, k) == rows.get(value + 1)


def test_binom_pair_admissibility() -> None:
    assert BinomPair(4, 2).is_admissible
    assert not BinomPair(3, 2).is_admissible
    assert not BinomPair(10, 1).is_admissible
    assert BinomPair(104, 39).value() == BinomPair(103, 40).value()
