"""Stored example tables and their recomputation from scratch."""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .artin_schreier import ArtinSchreierCurve, count_as
from .fibre_product import Component, component_h, count_points_fibre, make_fibre
from .field_tower import tower_for_q
from .kummer_curve import KummerCurve, ReciprocalKummer, count_points
from .polynomial import is_separable, parse_poly
from .records import RecordTable
from .rows import ReportRow


@dataclass(frozen=True)
class TableSpec:
    kind: str  # "single", "fibre" or "as"
    family: str
    epsilon: int = -1
    lam: int = 1


TABLES = {
    "4.5": TableSpec("single", "THM41"),
    "4.6": TableSpec("single", "THM41"),
    "4.7": TableSpec("single", "THM41"),
    "4.8": TableSpec("single", "THM41"),
    "4.8-remark": TableSpec("single", "THM41"),
    "4.9": TableSpec("single", "THM41"),
    "4.10": TableSpec("as", "AS"),
    "5.2": TableSpec("single", "THM51", 1, -1),
    "5.3": TableSpec("single", "THM51", 1, -1),
    "5.4": TableSpec("single", "THM51", 1, -1),
    "5.5": TableSpec("single", "THM51", 1, -1),
    "5.6": TableSpec("single", "THM51", 1, -1),
    "6.2": TableSpec("fibre", "FIBRE61"),
    "6.4": TableSpec("fibre", "FIBRE63"),
}

CAPTION_VERDICT = {"record": "NEW_RECORD", "entry": "NEW_ENTRY", "meets": "MEETS_RECORD"}


class UnknownTable(KeyError):
    pass


def table_ids() -> list[str]:
    return list(TABLES)


def fixture_path(table_id: str) -> Path:
    return Path(str(resources.files("recipcurves") / "data" / "tables" / f"{table_id}.csv"))


def _spec(table_id: str) -> TableSpec:
    try:
        return TABLES[table_id]
    except KeyError:
        raise UnknownTable(f"unknown table id {table_id!r}; known: {', '.join(TABLES)}") from None


def _opt_int(text: str) -> int | None:
    return int(text) if text.strip() else None


def load_fixture(table_id: str) -> list[ReportRow]:
    """The stored rows of a table, as ReportRow with the caption's verdict."""
    spec = _spec(table_id)
    out = []
    with open(fixture_path(table_id), newline="") as fh:
        for rec in csv.DictReader(fh):
            common = dict(
                family=spec.family,
                q=int(rec["q"]),
                g=int(rec["g"]),
                points=int(rec["points"]),
                olb=_opt_int(rec["olb"]),
                verdict=CAPTION_VERDICT[rec["caption"]],
                maximal=rec["maximal"] == "1",
                note=rec["olb_kind"],
            )
            if spec.kind == "single":
                row = ReportRow(m=int(rec["m"]), f=rec["f"], s=int(rec["s"]), **common)
            elif spec.kind == "fibre":
                row = ReportRow(
                    m=int(rec["m1"]), f=rec["f1"], s=int(rec["s1"]),
                    m2=int(rec["m2"]), f2=rec["f2"], s2=int(rec["s2"]), **common,
                )
            else:
                row = ReportRow(m=None, f=rec["f"], s=int(rec["s"]), **common)
            out.append(row)
    return out


def xi_orbit(q: int) -> list[int]:
    """Exponents j (one per Frobenius class) such that xi^j is again primitive; j = 1 first."""
    p = tower_for_q(q).p
    if q == 2:
        return [1]  # F_2^* is trivial
    seen, out = set(), []
    for j in range(1, q - 1):
        if math.gcd(j, q - 1) != 1 or j in seen:
            continue
        out.append(j)
        t = j
        while True:
            seen.add(t)
            t = t * p % (q - 1)
            if t == j:
                break
    return out


_XI = re.compile(r"xi|ξ")


def compute_row(spec: TableSpec, row: ReportRow, j: int = 1, table: RecordTable | None = None):
    """Recompute (g, points, maximal, verdict) for a fixture row with xi read as xi^j."""
    T = tower_for_q(row.q)
    F = T.small
    xi = F.pow(F.xi, j)
    if spec.kind == "single":
        f = parse_poly(row.f, F, xi)
        if is_separable(f):
            rep = count_points(ReciprocalKummer(row.q, row.m, row.s, spec.epsilon, spec.lam, f, T), table)
        else:
            # The curve is still well defined; only the family hypothesis fails.
            h = component_h(Component(row.m, row.s, f), spec.epsilon, spec.lam)
            rep = count_points(KummerCurve(T, row.m, h), table)
            rep.notes.append("f is not separable (outside the family hypothesis)")
    elif spec.kind == "fibre":
        fam = spec.family[-2:]
        fp = make_fibre(row.q, row.m, row.s, parse_poly(row.f, F, xi), row.m2, row.s2, parse_poly(row.f2, F, xi), fam)
        rep = count_points_fibre(fp, table)
    else:
        rep = count_as(ArtinSchreierCurve(row.q, row.s, parse_poly(row.f, F, xi), T), table)
    return rep


@dataclass
class Reproduction:
    table_id: str
    rows: list[ReportRow] = field(default_factory=list)
    diff: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diff


def _uses_xi(row: ReportRow) -> bool:
    return bool(_XI.search(row.f) or _XI.search(row.f2))


def reproduce_row(spec: TableSpec, row: ReportRow, table: RecordTable | None = None) -> tuple[ReportRow, str | None]:
    """Recompute one row; rows mentioning xi may match at any primitive xi^j."""
    candidates = xi_orbit(row.q) if _uses_xi(row) else [1]
    first = None
    for j in candidates:
        try:
            rep = compute_row(spec, row, j, table)
        except ValueError as exc:
            return row, f"q={row.q} m={row.m} f={row.f} s={row.s}: {exc}"
        got = ReportRow(
            family=row.family, q=row.q, m=row.m, f=row.f, s=row.s,
            g=rep.genus, points=rep.points, olb=row.olb,
            verdict=rep.verdict.kind.value if rep.verdict else "NONE",
            maximal=rep.maximal, m2=row.m2, s2=row.s2, f2=row.f2,
            note="; ".join(([] if j == 1 else [f"xi -> xi^{j}"]) + rep.notes),
        )
        if first is None:
            first = got
        if (got.g, got.points, got.maximal) == (row.g, row.points, row.maximal):
            return got, None
    return first, (
        f"q={row.q} m={row.m} f={row.f} s={row.s}"
        + (f" m2={row.m2} f2={row.f2} s2={row.s2}" if row.m2 is not None else "")
        + f": expected (g={row.g}, {row.points}, maximal={row.maximal}),"
        f" got (g={first.g}, {first.points}, maximal={first.maximal})"
    )


def reproduce_table(table_id: str, table: RecordTable | None = None) -> Reproduction:
    spec = _spec(table_id)
    out = Reproduction(table_id)
    for row in load_fixture(table_id):
        got, diff = reproduce_row(spec, row, table)
        out.rows.append(got)
        if diff:
            out.diff.append(diff)
    return out


__all__ = [
    "Reproduction",
    "TABLES",
    "TableSpec",
    "UnknownTable",
    "compute_row",
    "load_fixture",
    "reproduce_row",
    "reproduce_table",
    "table_ids",
    "xi_orbit",
]
