from decimal import Decimal, getcontext

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recipcurves.records import (
    RecordEntry,
    RecordTable,
    VerdictKind,
    classify,
    hasse_weil_upper,
    many_points_threshold,
    serre_upper,
)

getcontext().prec = 60


def decimal_L(q, U):
    # independent high-precision evaluation of floor((U - q - 1)/sqrt 2) + q + 1
    return int((Decimal(U - q - 1) / Decimal(2).sqrt()).to_integral_value(rounding="ROUND_FLOOR")) + q + 1


@pytest.mark.parametrize("q,g,U", [(4, 0, 5), (25, 2, 46), (81, 4, 154), (49, 1, 64)])
def test_serre_examples(q, g, U):
    assert serre_upper(q, g) == U


def test_hasse_weil():
    assert hasse_weil_upper(81, 4) == 81 + 1 + 8 * 9
    with pytest.raises(ValueError):
        hasse_weil_upper(80, 1)


@pytest.mark.parametrize("q,g,U,L", [(25, 0, 26, 26), (2401, 47, 7007, 5658), (361, 33, 1616, 1248)])
def test_threshold_examples(q, g, U, L):
    assert many_points_threshold(q, g, U) == L == decimal_L(q, U)


def test_threshold_below_q_plus_one():
    with pytest.raises(ValueError):
        many_points_threshold(25, 1, 20)


@given(st.integers(2, 10**6), st.integers(0, 10**4))
def test_threshold_matches_decimal(q, x):
    U = q + 1 + x
    L = many_points_threshold(q, 0, U)
    assert L == decimal_L(q, U)
    assert q + 1 <= L <= U


def test_classify_examples():
    t = RecordTable({(169, 13): RecordEntry(400, 480), (169, 11): RecordEntry(None, 455)})
    assert classify(444, 169, 13, t).kind is VerdictKind.NEW_RECORD
    assert classify(400, 169, 13, t).kind is VerdictKind.MEETS_RECORD
    L = many_points_threshold(169, 13, 480)
    assert classify(L, 169, 13, t).kind is VerdictKind.MANY_POINTS
    assert classify(L - 1, 169, 13, t).kind is VerdictKind.NONE
    L11 = many_points_threshold(169, 11, 455)
    assert classify(L11, 169, 11, t).kind is VerdictKind.NEW_ENTRY
    assert classify(L11 - 1, 169, 11, t).kind is VerdictKind.NONE


def test_no_table_fallback():
    v = classify(170, 169, 0, None)
    assert v.source == "no-table fallback"
    assert v.U == serre_upper(169, 0) == 170
    assert v.kind is VerdictKind.MANY_POINTS
    v = classify(170, 169, 0, RecordTable())
    assert v.source == "no-table fallback"


def test_table_validation(tmp_path):
    with pytest.raises(ValueError, match="exceeds upper"):
        RecordTable({(25, 2): RecordEntry(45, 44)})
    with pytest.raises(ValueError, match="Serre"):
        RecordTable({(25, 2): RecordEntry(None, 47)})
    p = tmp_path / "bad.csv"
    p.write_text("q,g,lower,upper\n25,two,,46\n")
    with pytest.raises(ValueError, match="malformed"):
        RecordTable.from_csv(p)


def test_csv_round_trip(tmp_path, record_table):
    p = tmp_path / "t.csv"
    record_table.to_csv(p)
    again = RecordTable.from_csv(p)
    assert again.entries == record_table.entries
    assert len(again) == len(record_table) > 0


@settings(max_examples=200)
@given(st.sampled_from([25, 49, 81, 121, 169]), st.integers(0, 20), st.integers(0, 400), st.data())
def test_verdict_monotone_in_points(q, g, extra, data):
    U = serre_upper(q, g)
    lower = data.draw(st.one_of(st.none(), st.integers(q + 1, U)))
    t = RecordTable({(q, g): RecordEntry(lower, U)})
    v1 = classify(q + 1 + extra, q, g, t)
    v2 = classify(q + 2 + extra, q, g, t)
    assert v1.kind.rank <= v2.kind.rank
    assert v1.L <= v1.U
