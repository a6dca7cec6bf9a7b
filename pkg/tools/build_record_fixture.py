"""Rebuild src/recipcurves/data/records.csv from the shipped example tables.

Record rows store their old lower bound, meet rows store their own count as the
lower bound, and new-entry rows store no lower bound and the largest upper bound
U <= Serre whose threshold L(q, g) equals the printed OLB.
"""

from recipcurves.records import RecordEntry, RecordTable, default_table_path, many_points_threshold, serre_upper
from recipcurves.tables import load_fixture, table_ids


def build() -> RecordTable:
    entries = {}
    for t in table_ids():
        for r in load_fixture(t):
            Q = r.q * r.q
            S = serre_upper(Q, r.g)
            if r.verdict == "NEW_RECORD":
                e = RecordEntry(r.olb, S)
            elif r.verdict == "MEETS_RECORD":
                e = RecordEntry(r.points, S)
            else:
                U = max(U for U in range(Q + 1, S + 1) if many_points_threshold(Q, r.g, U) == r.olb)
                e = RecordEntry(None, U)
            if entries.setdefault((Q, r.g), e) != e:
                raise SystemExit(f"conflicting rows for q={Q}, g={r.g}")
    return RecordTable(entries)


if __name__ == "__main__":
    build().to_csv(default_table_path())
    print(default_table_path())
