"""Sorted enumeration of binomial coefficients with a table and a priority queue.

Diagonal ``i`` of Pascal's triangle holds the values C(i+k, k) for k = 2..i.
Each diagonal is strictly increasing in k, so keeping the current head of
every diagonal in a heap yields all admissible binomials with row minus index
below N in nondecreasing order. Equal neighbours in that order are
collisions; values a little below the one just popped are near collisions.
"""
from __future__ import annotations

import heapq
import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterator, Union

import gmpy2

from .approx_arith import (
    Interval,
    Ordering,
    check_precision,
    ext_from_exact,
    ext_root_upper,
    interval_add,
    interval_compare,
)
from .config import DEFAULT_NEAR_EXPONENT, DEFAULT_PRECISION_BITS
from .errors import ConfigurationError, ScanInvariantError, VerificationError
from .exact_arith import BinomPair, ExactValue, binom_exact, pascal_step

logger = logging.getLogger(__name__)


class ScanMode(Enum):
    COLLISIONS = "collisions"
    NEAR = "near"


@dataclass(frozen=True)
class ScanConfig:
    max_index: int
    mode: ScanMode = ScanMode.COLLISIONS
    near_exponent: int = DEFAULT_NEAR_EXPONENT
    precision_bits: int = DEFAULT_PRECISION_BITS
    exact_mode: bool = False
    check_invariants: bool = False

    def __post_init__(self) -> None:
        if self.max_index < 1:
            raise ConfigurationError("max_index must be at least 1")
        if self.near_exponent < 1:
            raise ConfigurationError("near_exponent must be at least 1")
        check_precision(self.precision_bits)


@dataclass(frozen=True)
class CollisionRecord:
    n: int
    k: int
    m: int
    l: int
    value: ExactValue


@dataclass(frozen=True)
class NearCollisionRecord:
    n: int
    k: int
    m: int
    l: int
    d: int
    value: ExactValue


ScanRecord = Union[CollisionRecord, NearCollisionRecord]


class PairKind(Enum):
    COLLISION = "collision"
    NEAR_COLLISION = "near"
    NEITHER = "neither"


@dataclass(frozen=True)
class Classification:
    kind: PairKind
    d: int = 0


def classify_pair(a: BinomPair, b: BinomPair, near_exponent: int = DEFAULT_NEAR_EXPONENT) -> Classification:
    if not (a.is_admissible and b.is_admissible):
        raise ConfigurationError(f"pairs {tuple(a)} and {tuple(b)} must satisfy 2 <= k <= n/2")
    if a == b:
        raise ConfigurationError("a pair cannot be classified against itself")
    va, vb = a.value(), b.value()
    if va == vb:
        return Classification(PairKind.COLLISION)
    d = abs(va - vb)
    if max(va, vb) >= d**near_exponent:
        return Classification(PairKind.NEAR_COLLISION, d)
    return Classification(PairKind.NEITHER)


def collision_record(a: BinomPair, b: BinomPair) -> CollisionRecord:
    """Build the record with the smaller index first, verifying equality exactly."""
    if a.k > b.k:
        a, b = b, a
    value = a.value()
    if a.k == b.k or value != b.value():
        raise VerificationError(f"C{tuple(a)} and C{tuple(b)} are not a collision")
    return CollisionRecord(a.n, a.k, b.n, b.k, value)


class QueueEntry:
    """Head of one diagonal: the value C(i+k, k), exact or as an interval."""

    __slots__ = ("i", "k", "value", "_exact")

    def __init__(self, i: int, k: int, value: ExactValue | Interval) -> None:
        self.i = i
        self.k = k
        self.value = value
        self._exact: ExactValue | None = value if isinstance(value, int) else None

    @property
    def pair(self) -> BinomPair:
        return BinomPair(self.i + self.k, self.k)

    @property
    def is_exact(self) -> bool:
        return self._exact is not None

    def exact(self) -> ExactValue:
        if self._exact is None:
            self._exact = binom_exact(self.i + self.k, self.k)
        return self._exact

    def compare(self, other: QueueEntry) -> int:
        """Exact three-way comparison of the values, exact only when intervals overlap."""
        if isinstance(self.value, Interval) and isinstance(other.value, Interval):
            order = interval_compare(self.value, other.value)
            if order is Ordering.LESS:
                return -1
            if order is Ordering.GREATER:
                return 1
        a, b = self.exact(), other.exact()
        return (a > b) - (a < b)

    def __lt__(self, other: QueueEntry) -> bool:
        c = self.compare(other)
        if c:
            return c < 0
        # Equal values: larger k first.
        return self.k > other.k

    def __repr__(self) -> str:
        return f"QueueEntry(i={self.i}, k={self.k})"


@dataclass
class ScanStats:
    pops: int = 0
    exact_fallbacks: int = 0
    near_checks: int = 0
    collisions: int = 0
    near_collisions: int = 0


@dataclass
class Scanner:
    """One scan run; ``run`` yields records in pop order."""

    config: ScanConfig
    stats: ScanStats = field(default_factory=ScanStats)
    table: list[ExactValue | Interval] = field(init=False, repr=False)
    table_k: list[int] = field(init=False, repr=False)
    queue: list[QueueEntry] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        n = self.config.max_index
        self.table = [self._initial(i) for i in range(n)]
        self.table_k = [2] * n
        self.queue = [QueueEntry(i, 2, self.table[i]) for i in range(2, n)]
        heapq.heapify(self.queue)

    def _initial(self, i: int) -> ExactValue | Interval:
        value = binom_exact(i + 2, 2)
        if self.config.exact_mode:
            return value
        return ext_from_exact(value, self.config.precision_bits)

    def _add(self, a: ExactValue | Interval, b: ExactValue | Interval) -> ExactValue | Interval:
        if isinstance(a, int):
            return pascal_step(a, b)
        return interval_add(a, b)

    def _advance(self, entry: QueueEntry) -> None:
        i, k = entry.i, entry.k
        if k >= i:
            return
        if k + 1 == i:
            # C(2k+1, k+1) = C(2k+1, k); diagonal i-1 already retired.
            neighbor = entry.value
        else:
            neighbor = self.table[i - 1]
            if self.config.check_invariants:
                self._check_neighbor(i, k, neighbor)
        value = self._add(entry.value, neighbor)
        self.table[i] = value
        self.table_k[i] = k + 1
        heapq.heappush(self.queue, QueueEntry(i, k + 1, value))

    def _check_neighbor(self, i: int, k: int, neighbor: ExactValue | Interval) -> None:
        expected = binom_exact(i + k, k + 1)
        if self.table_k[i - 1] != k + 1:
            raise ScanInvariantError(
                f"slot {i - 1} is at index {self.table_k[i - 1]}, expected {k + 1}"
            )
        held = neighbor == expected if isinstance(neighbor, int) else neighbor.contains(expected)
        if not held:
            raise ScanInvariantError(f"slot {i - 1} does not hold C({i + k}, {k + 1})")

    def _pop(self) -> QueueEntry:
        entry = heapq.heappop(self.queue)
        self.stats.pops += 1
        if not self.config.exact_mode and entry.is_exact:
            # Its interval overlapped a neighbour in the heap.
            self.stats.exact_fallbacks += 1
            logger.debug("C(%d, %d) needed an exact comparison", entry.i + entry.k, entry.k)
        self._advance(entry)
        return entry

    def run(self) -> Iterator[ScanRecord]:
        near = self.config.mode is ScanMode.NEAR
        run: list[QueueEntry] = []
        window: deque[QueueEntry] = deque()
        previous: ExactValue | None = None
        while self.queue:
            entry = self._pop()
            if self.config.check_invariants:
                current = entry.exact()
                if previous is not None and current < previous:
                    raise ScanInvariantError(f"popped {current} after {previous}")
                previous = current
            if run and entry.compare(run[-1]) == 0:
                run.append(entry)
            else:
                yield from self._close_run(run)
                run = [entry]
            if near:
                yield from self._near_partners(entry, window)
                window.append(entry)
        yield from self._close_run(run)
        logger.info(
            "scan N=%d finished: %d pops, %d exact fallbacks, %d collisions, %d near collisions",
            self.config.max_index,
            self.stats.pops,
            self.stats.exact_fallbacks,
            self.stats.collisions,
            self.stats.near_collisions,
        )

    def _close_run(self, run: list[QueueEntry]) -> Iterator[CollisionRecord]:
        if len(run) < 2:
            return
        records = [collision_record(a.pair, b.pair) for a, b in combinations(run, 2)]
        records.sort(key=lambda r: (r.l, r.k))
        self.stats.collisions += len(records)
        yield from records

    def _near_partners(self, entry: QueueEntry, window: deque[QueueEntry]) -> Iterator[NearCollisionRecord]:
        e = self.config.near_exponent
        if isinstance(entry.value, Interval):
            bound = ext_root_upper(entry.value.hi, e)
            reach = Interval(bound, bound)
            while window and interval_compare(interval_add(window[0].value, reach), entry.value) is Ordering.LESS:
                window.popleft()
            if not window:
                return
            self.stats.near_checks += 1
        v = entry.exact()
        root, _ = gmpy2.iroot(v, e)
        floor_value = v - int(root)
        while window and window[0].exact() < floor_value:
            window.popleft()
        for other in window:
            d = v - other.exact()
            if d > 0:
                self.stats.near_collisions += 1
                yield NearCollisionRecord(other.i + other.k, other.k, entry.i + entry.k, entry.k, d, v)


def scan(config: ScanConfig) -> Iterator[ScanRecord]:
    """Stream the collisions (and, in near mode, near collisions) of one scan."""
    return Scanner(config).run()


__all__ = [
    "Classification",
    "CollisionRecord",
    "NearCollisionRecord",
    "PairKind",
    "QueueEntry",
    "ScanConfig",
    "ScanMode",
    "ScanRecord",
    "ScanStats",
    "Scanner",
    "classify_pair",
    "collision_record",
    "scan",
]
