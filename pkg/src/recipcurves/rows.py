"""Report rows and their CSV / JSON serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields

SCHEMA = "recipcurves.report-rows"
SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ReportRow:
    """One curve, in table column order: q, m, b-or-f, s, g, #X, OLB, verdict, maximal.

    Single covers leave m2/s2/f2 empty; Artin-Schreier rows leave m empty.
    """

    family: str
    q: int
    m: int | None
    f: str
    s: int
    g: int
    points: int
    olb: int | None = None
    verdict: str = "NONE"
    maximal: bool = False
    m2: int | None = None
    s2: int | None = None
    f2: str = ""
    note: str = ""

    def key(self) -> tuple:
        return (self.family, self.q, self.m or 0, self.m2 or 0, self.s, self.s2 or 0, self.f, self.f2)


COLUMNS = [f.name for f in fields(ReportRow)]
_INT_OPT = {"m", "olb", "m2", "s2"}
_INT = {"q", "s", "g", "points"}


def _cell(name: str, value) -> str:
    if value is None:
        return ""
    if name == "maximal":
        return "1" if value else "0"
    return str(value)


def _parse(name: str, text: str):
    if name in _INT:
        return int(text)
    if name in _INT_OPT:
        return int(text) if text != "" else None
    if name == "maximal":
        return text in ("1", "true", "True")
    return text


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    # minimal quoting only guards the line terminator, so a bare \r needs full quoting
    wq = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_ALL)
    w.writerow(COLUMNS)
    for r in rows:
        cells = [_cell(c, getattr(r, c)) for c in COLUMNS]
        if any("\0" in x for x in cells):
            raise ValueError("CSV cells cannot contain NUL characters")
        (wq if any("\r" in x for x in cells) else w).writerow(cells)
    return buf.getvalue()


def rows_from_csv(text: str) -> list[ReportRow]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [ReportRow(**{c: _parse(c, rec[c]) for c in COLUMNS}) for rec in reader]


def rows_to_json(rows) -> str:
    doc = {"schema": SCHEMA, "version": SCHEMA_VERSION, "rows": [asdict(r) for r in rows]}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def rows_from_json(text: str) -> list[ReportRow]:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA or doc.get("version") != SCHEMA_VERSION:
        raise ValueError("unsupported report schema")
    return [ReportRow(**r) for r in doc["rows"]]


def export(rows, path, fmt: str = "csv") -> None:
    text = rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def load(path, fmt: str | None = None) -> list[ReportRow]:
    with open(path) as fh:
        text = fh.read()
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") else "csv"
    return rows_from_json(text) if fmt == "json" else rows_from_csv(text)
