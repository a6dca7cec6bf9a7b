import pytest

from recipcurves.artin_schreier import ArtinSchreierCurve, count_as, genus_as
from recipcurves.field_tower import tower_for_q
from recipcurves.polynomial import parse_poly


def as_curve(q, s, f):
    T = tower_for_q(q)
    return ArtinSchreierCurve(q, s, parse_poly(f, T.small), T)


@pytest.mark.parametrize("q,g,pts", [(7, 12, 170), (11, 20, 442), (13, 24, 626)])
def test_table_rows(q, g, pts):
    c = as_curve(q, 2, "x^2+1")
    assert genus_as(c) == g
    rep = count_as(c)
    assert (rep.genus, rep.points) == (g, pts)
    assert rep.within_hasse_weil


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13])
def test_trace_map_fibres(q):
    T = tower_for_q(q)
    E = T.big
    image = {}
    for y in range(E.order):
        t = E.add(E.pow(y, q), y)
        image[t] = image.get(t, 0) + 1
    assert set(image) == set(T.subfield_codes())
    assert set(image.values()) == {q}


@pytest.mark.parametrize("q,s,f", [(3, 1, "x+1"), (5, 3, "x^2+2"), (7, 1, "x+3"), (4, 1, "x+xi"), (9, 2, "x+xi")])
def test_count_matches_brute_force(q, s, f):
    c = as_curve(q, s, f)
    T = c.tower
    E = T.big
    num, den = c.h.num.embed(T), c.h.den.embed(T)
    sols = 0
    for x in range(E.order):
        if den(x) == 0:
            continue
        v = E.div(num(x), den(x))
        sols += sum(1 for y in range(E.order) if E.add(E.pow(y, q), y) == v)
    poles = sum(1 for x in range(E.order) if den(x) == 0) + (num.degree > den.degree)
    # the place at infinity is finite (and unramified) when deg num <= deg den
    if num.degree <= den.degree:
        vinf = E.div(num.lc, den.lc) if num.degree == den.degree else 0
        sols += q if T.in_subfield(vinf) else 0
    assert count_as(c).points == sols + poles


def test_wild_pole_rejected():
    with pytest.raises(ValueError):
        as_curve(7, 7, "x+1")  # pole of order 7 at 0


def test_hasse_weil_on_small_grid():
    for q in (3, 5, 7):
        for s in range(0, 5):
            for b in range(1, q):
                try:
                    c = as_curve(q, s, f"x+{b}")
                except ValueError:
                    continue
                assert count_as(c).within_hasse_weil
