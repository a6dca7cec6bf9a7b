"""CountReport: what every counter returns and the CLI prints."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .records import RecordTable, Verdict, classify, hasse_weil_upper

SUSPECT = "constant-field/irreducibility suspect"


@dataclass
class CountReport:
    genus: int
    points: int
    q: int
    method: str = "place-enumeration"
    genus_method: str = ""
    curve: dict = field(default_factory=dict)
    field_header: dict = field(default_factory=dict)
    verdict: Verdict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def q_sq(self) -> int:
        return self.q * self.q

    @property
    def hasse_weil_bound(self) -> int:
        return hasse_weil_upper(self.q_sq, self.genus)

    @property
    def hasse_weil_slack(self) -> int:
        return self.hasse_weil_bound - self.points

    @property
    def maximal(self) -> bool:
        return self.points == self.hasse_weil_bound

    @property
    def within_hasse_weil(self) -> bool:
        return abs(self.points - self.q_sq - 1) <= 2 * self.genus * self.q

    @property
    def suspect(self) -> bool:
        return SUSPECT in self.notes

    def check_hasse_weil(self) -> CountReport:
        if not self.within_hasse_weil and SUSPECT not in self.notes:
            self.notes.append(SUSPECT)
        return self

    def classify(self, table: RecordTable | None) -> CountReport:
        self.verdict = classify(self.points, self.q_sq, self.genus, table)
        return self

    def to_dict(self) -> dict:
        return {
            "field": self.field_header,
            "curve": self.curve,
            "genus": self.genus,
            "points": self.points,
            "maximal": self.maximal,
            "hasse_weil_slack": self.hasse_weil_slack,
            "method": self.method,
            "genus_method": self.genus_method,
            "verdict": self.verdict.to_dict() if self.verdict else None,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def is_maximal(r: CountReport, q: int | None = None) -> bool:
    q = r.q if q is None else q
    return r.points == q * q + 1 + 2 * r.genus * q
