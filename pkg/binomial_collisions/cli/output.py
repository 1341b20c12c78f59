"""Machine-readable output records and their jsonl, csv and table writers."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import Any, TextIO

from ..config import CSV_COLUMNS, CSV_EXTRAS_COLUMN, RECORD_TYPES
from ..families.catalog import CatalogEntry, CatalogKind
from ..scan_engine import CollisionRecord, NearCollisionRecord, ScanRecord

FORMATS = ("jsonl", "csv", "table")


@dataclass
class OutputRecord:
    type: str
    n: int | None = None
    k: int | None = None
    m: int | None = None
    l: int | None = None
    d: int | None = None
    value: str | None = None
    extras: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.type not in RECORD_TYPES:
            raise ValueError(f"unknown record type {self.type!r}")

    def as_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"type": self.type}
        for key in CSV_COLUMNS[1:]:
            item = getattr(self, key)
            if item is not None:
                data[key] = item
        if self.extras:
            data["extras"] = self.extras
        return data


def from_scan(record: ScanRecord) -> OutputRecord:
    if isinstance(record, NearCollisionRecord):
        return OutputRecord("near", record.n, record.k, record.m, record.l, record.d, str(record.value))
    return from_collision(record)


def from_collision(record: CollisionRecord) -> OutputRecord:
    return OutputRecord("collision", record.n, record.k, record.m, record.l, value=str(record.value))


def from_catalog(entry: CatalogEntry) -> OutputRecord:
    kind = "collision" if entry.kind is CatalogKind.COLLISION else "near"
    d = entry.d if entry.kind is CatalogKind.NEAR_D1 else None
    return OutputRecord(kind, entry.n, entry.k, entry.m, entry.l, d, entry.value)


class RecordWriter:
    """Write records one per line in the chosen format."""

    def __init__(self, stream: TextIO, fmt: str = "jsonl") -> None:
        if fmt not in FORMATS:
            raise ValueError(f"unknown output format {fmt!r}")
        self.stream = stream
        self.fmt = fmt
        self.count = 0
        self._csv = None
        if fmt == "csv":
            self._csv = csv.writer(stream, lineterminator="\n")
            self._csv.writerow((*CSV_COLUMNS, CSV_EXTRAS_COLUMN))

    def write(self, record: OutputRecord) -> None:
        if self.fmt == "jsonl":
            self.stream.write(json.dumps(record.as_dict()) + "\n")
        elif self._csv is not None:
            row = ["" if getattr(record, key) is None else getattr(record, key) for key in CSV_COLUMNS]
            row.append(json.dumps(record.extras, separators=(",", ":")) if record.extras else "")
            self._csv.writerow(row)
        else:
            self.stream.write(format_row(record) + "\n")
        self.count += 1

    def flush(self) -> None:
        self.stream.flush()


def format_row(record: OutputRecord) -> str:
    """Aligned human-readable line; no stability guarantee."""
    cells = [f"{record.type:<9}"]
    for key in ("n", "k", "m", "l", "d"):
        item = getattr(record, key)
        cells.append(f"{key}={'-' if item is None else item:<8}")
    cells.append(f"value={record.value or '-'}")
    cells.extend(f"{key}={item}" for key, item in record.extras.items())
    return "  ".join(cells)


__all__ = [
    "FORMATS",
    "OutputRecord",
    "RecordWriter",
    "format_row",
    "from_catalog",
    "from_collision",
    "from_scan",
]
