"""Per-(k, l) modular sieve for collisions C(m, l) = C(n, k) below a bound."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from typing import Callable, Iterable, Iterator, Protocol

import gmpy2
import numpy as np
from sympy import primerange

from ..config import DEFAULT_PRIME_BOUND
from ..errors import CheckpointMismatchError, ConfigurationError
from ..exact_arith import binom_exact, is_binomial
from ..scan_engine import CollisionRecord
from .image import binomial_residues

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SievePlan:
    k: int
    l: int
    max_value: int
    prime_bound: int = DEFAULT_PRIME_BOUND

    def __post_init__(self) -> None:
        if not 2 <= self.k < self.l:
            raise ConfigurationError(f"need 2 <= k < l, got k={self.k}, l={self.l}")
        if self.max_value < 0:
            raise ConfigurationError("max_value must be non-negative")
        if self.prime_bound < 2:
            raise ConfigurationError("prime_bound must be at least 2")

    def primes(self) -> list[int]:
        """Ascending primes p with l < p <= prime_bound."""
        return [int(p) for p in primerange(self.l + 1, self.prime_bound + 1)]


@dataclass
class SieveState:
    m_min: int
    m_max: int
    survivors: np.ndarray
    primes_done: list[int] = field(default_factory=list)

    @property
    def remaining(self) -> int:
        return int(np.count_nonzero(self.survivors))

    def surviving_m(self) -> list[int]:
        return [self.m_min + int(i) for i in np.flatnonzero(self.survivors)]


@dataclass
class SieveResult:
    plan: SievePlan
    state: SieveState
    finished: bool
    collisions: list[CollisionRecord] = field(default_factory=list)
    survivors: list[int] = field(default_factory=list)
    false_survivors: list[int] = field(default_factory=list)


class StateStore(Protocol):
    """Anything that can persist the sieve state after each prime."""

    def save(self, plan: SievePlan, state: SieveState) -> None: ...


def max_m_for_bound(max_value: int, l: int) -> int:
    """Largest m with C(m, l) <= max_value; 2l - 1 when even C(2l, l) is too big."""
    lo = 2 * l
    if gmpy2.comb(lo, l) > max_value:
        return lo - 1
    hi = 2 * lo
    while gmpy2.comb(hi, l) <= max_value:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if gmpy2.comb(mid, l) <= max_value:
            lo = mid
        else:
            hi = mid
    return lo


def new_state(plan: SievePlan) -> SieveState:
    m_min = 2 * plan.l
    m_max = max_m_for_bound(plan.max_value, plan.l)
    survivors = np.ones(max(0, m_max - m_min + 1), dtype=bool)
    return SieveState(m_min, m_max, survivors)


def bad_residues(k: int, l: int, p: int) -> np.ndarray:
    """Residues a mod p for which C(a, l) is not a value of n -> C(n, k) mod p."""
    image = binomial_residues(k, p)
    target = binomial_residues(l, p)
    return np.flatnonzero(~np.isin(target, image))


def apply_prime(state: SieveState, k: int, l: int, p: int, bad: np.ndarray | None = None) -> None:
    if bad is None:
        bad = bad_residues(k, l, p)
    for a in bad:
        state.survivors[(int(a) - state.m_min) % p :: p] = False
    state.primes_done.append(p)


def _residue_batches(plan: SievePlan, primes: list[int], jobs: int) -> Iterator[tuple[int, np.ndarray]]:
    if jobs <= 1:
        for p in primes:
            yield p, bad_residues(plan.k, plan.l, p)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from zip(primes, pool.map(bad_residues, repeat(plan.k), repeat(plan.l), primes))


def _check_resumable(plan: SievePlan, state: SieveState) -> None:
    expected = new_state(plan)
    if (state.m_min, state.m_max) != (expected.m_min, expected.m_max):
        raise CheckpointMismatchError(
            f"checkpoint covers m in [{state.m_min}, {state.m_max}], plan needs "
            f"[{expected.m_min}, {expected.m_max}]"
        )
    if len(state.survivors) != len(expected.survivors):
        raise CheckpointMismatchError("checkpoint bitmap length does not match the plan")
    unknown = set(state.primes_done) - set(plan.primes())
    if unknown:
        raise CheckpointMismatchError(f"checkpoint applied primes outside the plan: {sorted(unknown)}")


def verify_survivors(plan: SievePlan, candidates: Iterable[int]) -> tuple[list[CollisionRecord], list[int]]:
    """Split sieve survivors into exact collisions and false survivors."""
    collisions: list[CollisionRecord] = []
    false_survivors: list[int] = []
    for m in candidates:
        value = binom_exact(m, plan.l)
        n = is_binomial(value, plan.k)
        if n is None:
            false_survivors.append(m)
        else:
            collisions.append(CollisionRecord(n, plan.k, m, plan.l, value))
    return collisions, false_survivors


def sieve_pair(
    plan: SievePlan,
    checkpoint: SieveState | None = None,
    *,
    store: StateStore | None = None,
    progress: Callable[[int, int], None] | None = None,
    stop_after: int | None = None,
    jobs: int = 1,
) -> SieveResult:
    """Sieve m in [2l, m_max] with primes above l, then verify what is left.

    ``stop_after`` limits how many primes this call applies; the returned
    state (also handed to ``store`` after every prime) can be passed back as
    ``checkpoint`` to continue.
    """
    if checkpoint is None:
        state = new_state(plan)
    else:
        _check_resumable(plan, checkpoint)
        state = checkpoint
    done = set(state.primes_done)
    pending = [p for p in plan.primes() if p not in done]
    if stop_after is not None:
        pending = pending[:stop_after]
    logger.info(
        "sieving k=%d l=%d over m in [%d, %d]: %d candidates, %d primes pending",
        plan.k, plan.l, state.m_min, state.m_max, state.remaining, len(pending),
    )
    if pending and state.remaining:
        for p, bad in _residue_batches(plan, pending, jobs):
            apply_prime(state, plan.k, plan.l, p, bad)
            remaining = state.remaining
            logger.debug("prime %d removed %d residue classes, %d left", p, len(bad), remaining)
            if progress is not None:
                progress(p, remaining)
            if store is not None:
                store.save(plan, state)
            if not remaining:
                break
    finished = state.remaining == 0 or set(plan.primes()) <= set(state.primes_done)
    result = SieveResult(plan, state, finished)
    if finished:
        result.collisions, result.false_survivors = verify_survivors(plan, state.surviving_m())
        result.survivors = [record.m for record in result.collisions]
        if result.false_survivors:
            logger.warning("k=%d l=%d: %d survivors are not collisions", plan.k, plan.l, len(result.false_survivors))
    logger.info("k=%d l=%d: %d collisions after %d primes", plan.k, plan.l, len(result.collisions), len(state.primes_done))
    return result


def l_max_for_bound(max_value: int) -> int:
    """Largest l with C(2l, l) <= max_value, or 0 when even C(2, 1) is too big."""
    top = 0
    while gmpy2.comb(2 * top + 2, top + 1) <= max_value:
        top += 1
    return top


def relevant_pairs(max_value: int, include_settled: bool = False) -> list[tuple[int, int]]:
    """The (k, l) pairs, k < l, that can hold a collision with value at most ``max_value``.

    By default the pairs with l <= 4 and (2, 5) are left out: their
    collisions are known completely. ``include_settled`` sieves them too.
    """
    pairs = []
    for l in range(3 if include_settled else 5, l_max_for_bound(max_value) + 1):
        for k in range(2, l):
            if (k, l) == (2, 5) and not include_settled:
                continue
            pairs.append((k, l))
    return pairs


def _sieve_plan(plan: SievePlan) -> SieveResult:
    return sieve_pair(plan)


def sieve_all(
    max_value: int,
    prime_bound: int = DEFAULT_PRIME_BOUND,
    *,
    jobs: int = 1,
    include_settled: bool = False,
) -> list[SieveResult]:
    """Sieve every relevant pair below ``max_value``; results come back in (l, k) order."""
    plans = [SievePlan(k, l, max_value, prime_bound) for k, l in relevant_pairs(max_value, include_settled)]
    logger.info("sieving %d (k, l) pairs up to %d", len(plans), max_value)
    if jobs <= 1 or len(plans) <= 1:
        results = [sieve_pair(plan) for plan in plans]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sieve_plan, plans))
    logger.info("%d collisions across %d pairs", sum(len(r.collisions) for r in results), len(plans))
    return results


__all__ = [
    "SievePlan",
    "SieveResult",
    "SieveState",
    "StateStore",
    "apply_prime",
    "bad_residues",
    "l_max_for_bound",
    "max_m_for_bound",
    "new_state",
    "relevant_pairs",
    "sieve_all",
    "sieve_pair",
    "verify_survivors",
]
