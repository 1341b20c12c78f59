"""Embedded catalogs of the known collisions and of the near collisions with d = 1."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from ..errors import VerificationError
from ..exact_arith import BinomPair, binom_exact
from ..scan_engine import PairKind, classify_pair

logger = logging.getLogger(__name__)


class CatalogKind(Enum):
    COLLISION = "collision"
    NEAR_D1 = "near"


@dataclass(frozen=True)
class CatalogEntry:
    n: int
    k: int
    m: int
    l: int
    value: str
    kind: CatalogKind

    @property
    def d(self) -> int:
        return 0 if self.kind is CatalogKind.COLLISION else 1


def _rows(kind: CatalogKind, *rows: tuple[int, int, int, int, str]) -> tuple[CatalogEntry, ...]:
    return tuple(CatalogEntry(n, k, m, l, value, kind) for n, k, m, l, value in rows)


SPORADIC_COLLISIONS = _rows(
    CatalogKind.COLLISION,
    (16, 2, 10, 3, "120"),
    (21, 2, 10, 4, "210"),
    (56, 2, 22, 3, "1540"),
    (120, 2, 36, 3, "7140"),
    (153, 2, 19, 5, "11628"),
    (221, 2, 17, 8, "24310"),
)

# C(78, 2) = C(15, 5) = C(14, 6), as its three pairwise equalities.
DOUBLE_COLLISION = _rows(
    CatalogKind.COLLISION,
    (78, 2, 15, 5, "3003"),
    (78, 2, 14, 6, "3003"),
    (15, 5, 14, 6, "3003"),
)

# C(m, l) = C(n, k) + 1.
NEAR_COLLISIONS_D1 = _rows(
    CatalogKind.NEAR_D1,
    (6, 3, 7, 2, "21"),
    (7, 3, 9, 2, "36"),
    (11, 2, 8, 3, "56"),
    (10, 5, 23, 2, "253"),
    (12, 4, 32, 2, "496"),
    (16, 3, 34, 2, "561"),
    (60, 2, 23, 3, "1771"),
    (27, 3, 77, 2, "2926"),
    (29, 3, 86, 2, "3655"),
    (34, 3, 21, 4, "5985"),
    (22, 5, 230, 2, "26335"),
    (260, 3, 2407, 2, "2895621"),
    (93, 4, 2417, 2, "2919736"),
    (62, 5, 3598, 2, "6471003"),
    (28, 11, 6554, 2, "21474181"),
    (665, 3, 9879, 2, "48792381"),
    (135, 5, 26333, 2, "346700278"),
    (139, 5, 28358, 2, "402073903"),
    (19630, 3, 1587767, 2, "1260501229261"),
    (160403633, 2, 425779, 3, "12864662659597529"),
)

CATALOG = SPORADIC_COLLISIONS + DOUBLE_COLLISION + NEAR_COLLISIONS_D1


def check_entry(entry: CatalogEntry) -> None:
    """Recompute one row exactly; raise VerificationError naming it on any mismatch."""
    name = f"({entry.n},{entry.k},{entry.m},{entry.l})"
    left = binom_exact(entry.n, entry.k)
    right = binom_exact(entry.m, entry.l)
    if right != int(entry.value):
        raise VerificationError(f"row {name}: C({entry.m},{entry.l}) = {right}, catalog says {entry.value}")
    if right - left != entry.d:
        raise VerificationError(f"row {name}: difference is {right - left}, expected {entry.d}")
    verdict = classify_pair(BinomPair(entry.n, entry.k), BinomPair(entry.m, entry.l))
    expected = PairKind.COLLISION if entry.kind is CatalogKind.COLLISION else PairKind.NEAR_COLLISION
    if verdict.kind is not expected:
        raise VerificationError(f"row {name}: classified as {verdict.kind.value}, expected {expected.value}")


def verify_catalog(entries: tuple[CatalogEntry, ...] = CATALOG) -> list[CatalogEntry]:
    for entry in entries:
        check_entry(entry)
    logger.info("verified %d catalog rows", len(entries))
    return list(entries)


__all__ = [
    "CATALOG",
    "CatalogEntry",
    "CatalogKind",
    "DOUBLE_COLLISION",
    "NEAR_COLLISIONS_D1",
    "SPORADIC_COLLISIONS",
    "check_entry",
    "verify_catalog",
]
