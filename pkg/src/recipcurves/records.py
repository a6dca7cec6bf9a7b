"""Upper bounds, the many-points threshold L(q, g) and the record taxonomy."""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


def serre_upper(q: int, g: int) -> int:
    """q + 1 + g * floor(2 sqrt(q)), in integers."""
    if q < 2 or g < 0:
        raise ValueError("need q >= 2 and g >= 0")
    return q + 1 + g * math.isqrt(4 * q)


def hasse_weil_upper(q_sq: int, g: int) -> int:
    """Hasse-Weil bound over a field of square order q_sq = q^2: q^2 + 1 + 2gq."""
    q = math.isqrt(q_sq)
    if q * q != q_sq:
        raise ValueError(f"{q_sq} is not a square")
    return q_sq + 1 + 2 * g * q


def many_points_threshold(q_sq: int, g: int, U: int) -> int:
    """L = floor((U - q_sq - 1) / sqrt 2) + q_sq + 1, computed exactly."""
    x = U - q_sq - 1
    if x < 0:
        raise ValueError(f"upper bound U={U} is below q+1={q_sq + 1}")
    # floor(x / sqrt 2) is the largest y >= 0 with 2 y^2 <= x^2.
    return math.isqrt(x * x // 2) + q_sq + 1


class VerdictKind(enum.Enum):
    NONE = "NONE"
    MANY_POINTS = "MANY_POINTS"
    NEW_ENTRY = "NEW_ENTRY"
    MEETS_RECORD = "MEETS_RECORD"
    NEW_RECORD = "NEW_RECORD"

    @property
    def rank(self) -> int:
        return _RANK[self]


_RANK = {
    VerdictKind.NONE: 0,
    VerdictKind.MANY_POINTS: 1,
    VerdictKind.NEW_ENTRY: 2,
    VerdictKind.MEETS_RECORD: 2,
    VerdictKind.NEW_RECORD: 3,
}


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    L: int
    U: int
    lower: int | None = None
    source: str = "table"

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "L": self.L, "U": self.U, "lower": self.lower, "source": self.source}


@dataclass(frozen=True)
class RecordEntry:
    lower: int | None
    upper: int


class RecordTable:
    """Rows (q, g) -> (lower or absent, upper), loaded from CSV `q,g,lower,upper`."""

    def __init__(self, entries: dict[tuple[int, int], RecordEntry] | None = None):
        self.entries = dict(entries or {})
        for (q, g), e in self.entries.items():
            self._check(q, g, e)

    @staticmethod
    def _check(q: int, g: int, e: RecordEntry) -> None:
        if e.lower is not None and e.lower > e.upper:
            raise ValueError(f"row q={q}, g={g}: lower {e.lower} exceeds upper {e.upper}")
        if e.upper > serre_upper(q, g):
            raise ValueError(f"row q={q}, g={g}: upper {e.upper} exceeds the Serre bound {serre_upper(q, g)}")

    @classmethod
    def from_csv(cls, path) -> RecordTable:
        entries = {}
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.DictReader(fh), start=2):
                try:
                    q, g = int(row["q"]), int(row["g"])
                    lower = int(row["lower"]) if (row.get("lower") or "").strip() else None
                    upper = int(row["upper"])
                except (KeyError, TypeError, ValueError) as exc:
                    raise ValueError(f"{path}:{lineno}: malformed record row {row}") from exc
                entries[(q, g)] = RecordEntry(lower, upper)
        return cls(entries)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["q", "g", "lower", "upper"])
            for (q, g), e in sorted(self.entries.items()):
                w.writerow([q, g, "" if e.lower is None else e.lower, e.upper])

    def get(self, q: int, g: int) -> RecordEntry | None:
        return self.entries.get((q, g))

    def __len__(self) -> int:
        return len(self.entries)


def default_table_path() -> Path:
    return Path(str(resources.files("recipcurves") / "data" / "records.csv"))


def load_default_table() -> RecordTable:
    return RecordTable.from_csv(default_table_path())


def classify(points: int, q_sq: int, g: int, table: RecordTable | None = None) -> Verdict:
    """Place a curve of genus g with `points` points over F_{q_sq} in the taxonomy."""
    entry = table.get(q_sq, g) if table is not None else None
    if entry is None:
        U = serre_upper(q_sq, g)
        L = many_points_threshold(q_sq, g, U)
        kind = VerdictKind.MANY_POINTS if points >= L else VerdictKind.NONE
        return Verdict(kind, L, U, None, "no-table fallback")
    U = entry.upper
    L = many_points_threshold(q_sq, g, U)
    if entry.lower is None:
        kind = VerdictKind.NEW_ENTRY if points >= L else VerdictKind.NONE
    elif points > entry.lower:
        kind = VerdictKind.NEW_RECORD
    elif points == entry.lower:
        kind = VerdictKind.MEETS_RECORD
    else:
        kind = VerdictKind.MANY_POINTS if points >= L else VerdictKind.NONE
    return Verdict(kind, L, U, entry.lower, "table")
