import itertools
import math

import pytest

from conftest import brute_fibre_solutions, closed_fibre_grid, random_fibres
from recipcurves.covers import DegreeDeficiency, kappa, unit_lattice_basis
from recipcurves.fibre_product import (
    Component,
    FibreProduct,
    count_points_fibre,
    genus_fibre,
    kappa_at,
    lower_bound_fibre,
    make_fibre,
    validate_fibre,
)
from recipcurves.field_tower import tower_for_q
from recipcurves.kummer_curve import HypothesisError, ReciprocalKummer, count_points
from recipcurves.polynomial import Poly


def test_certificate_passes_for_independent_covers():
    fp = make_fibre(19, 2, 4, "x^4+2", 4, 4, "x^4+7", "61")
    cert = validate_fibre(fp)
    assert cert.ok and cert.degree == 8 and cert.witness is None


def test_certificate_witness_for_identical_covers():
    fp = make_fibre(13, 4, 1, "x+2", 4, 1, "x+2", "63")
    cert = validate_fibre(fp)
    assert not cert.ok
    assert cert.witness == (1, -1, 4)
    with pytest.raises(DegreeDeficiency):
        count_points_fibre(fp)


def test_certificate_disjoint_branch_loci():
    fp = make_fibre(7, 2, 0, "x+3", 4, 0, "x^2+3", "61")
    assert validate_fibre(fp).ok


def test_kappa_and_lattice():
    assert kappa((2, 4), (0, 0)) == 8
    assert kappa((2, 4), (1, 0)) == 4
    assert kappa((6,), (4,)) == 2
    for ms in [(2, 4), (3, 6), (4, 4), (2, 6)]:
        for ks in itertools.product(range(-4, 5), repeat=2):
            M = math.lcm(*ms)
            basis = unit_lattice_basis(ms, ks)
            a_coef = ks[0] * (M // ms[0])
            b_coef = ks[1] * (M // ms[1])
            for a, b in basis:
                assert (a * a_coef + b * b_coef) % M == 0
            # the basis spans every lattice vector in a box
            det = abs(basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0])
            members = sum(1 for a in range(M) for b in range(M) if (a * a_coef + b * b_coef) % M == 0)
            assert det * members == M * M


def test_kappa_at_generic_and_simple_root():
    fp = make_fibre(13, 2, 0, "x^2+4", 4, 2, "x+5", "63")
    T = fp.tower
    E = T.big
    h1, h2 = (h.embed(T) for h in fp.hs)
    for a in range(1, E.order):
        v1 = (h1.num(a), h1.den(a))
        v2 = (h2.num(a), h2.den(a))
        if all(v1) and all(v2):
            kap, rat = kappa_at(fp, a)
            assert kap == 8
            u1, u2 = E.div(*v1), E.div(*v2)
            assert rat == (E.is_nth_power(u1, 2) and E.is_nth_power(u2, 4))
    root = E.neg(T.embed(5))  # simple root of f2 = x + 5
    kap, rat = kappa_at(fp, root)
    assert kap == 2
    u1 = E.div(h1.num(root), h1.den(root))
    assert rat == E.is_nth_power(u1, 2)


def test_all_or_nothing_against_solution_count():
    for fp in random_fibres(8, 11):
        T = fp.tower
        E = T.big
        h1, h2 = (h.embed(T) for h in fp.hs)
        m1, m2 = fp.c1.m, fp.c2.m
        for a in range(1, E.order, 3):
            if not (h1.num(a) and h1.den(a) and h2.num(a) and h2.den(a)):
                continue
            kap, rat = kappa_at(fp, a)
            sols = brute_fibre_solutions(T, m1, m2, E.div(h1.num(a), h1.den(a)), E.div(h2.num(a), h2.den(a)))
            assert sols in (0, kap)
            assert sols == m1 * m2 * rat


def test_degeneration_to_single_cover():
    n = 0
    for q in (5, 7, 9, 11, 13):
        T = tower_for_q(q)
        F = T.small
        for m in [k for k in range(2, q + 2) if (q + 1) % k == 0 and k % T.p]:
            for b in (2, 3):
                f = Poly(F, [b, 1])
                s = m - 1
                fp = FibreProduct(q, Component(m, s, f), Component(1, 0, Poly(F, [1, 1])), "61", T)
                c = ReciprocalKummer(q, m, s, -1, 1, f, T)
                assert genus_fibre(fp) == c.genus_rh()
                assert count_points_fibre(fp).points == count_points(c).points
                n += 1
    assert n >= 20


def test_closed_genus_examples():
    fp = make_fibre(19, 2, 4, "x^4+2", 4, 4, "x^4+7", "61")
    assert genus_fibre(fp, "CLOSED61") == 33 == genus_fibre(fp)
    assert any("s1 = 4 >= m1 = 2" in n for n in fp.notes)
    fp = make_fibre(13, 2, 0, "x^2+4", 4, 2, "x+5", "63")
    assert genus_fibre(fp, "CLOSED63") == 11 == genus_fibre(fp)


def test_general_genus_self_reciprocal_row():
    fp = make_fibre(5, 3, 2, "x^2+1", 6, 5, "x^2+4", "61")
    assert genus_fibre(fp) == 22
    with pytest.raises(HypothesisError):
        genus_fibre(fp, "CLOSED61")


@pytest.mark.parametrize("args,g,pts", [
    ((19, 2, 4, "x^4+2", 4, 4, "x^4+7", "61"), 33, 1280),
    ((5, 3, 2, "x^2+1", 6, 5, "x^2+4", "61"), 22, 174),
    ((13, 2, 0, "x^2+4", 4, 2, "x+5", "63"), 11, 444),
    ((13, 2, 0, "x+3", 6, 2, "x+6", "63"), 13, 444),
    ((13, 4, 1, "x+2", 4, 1, "x+6", "63"), 21, 568),
])
def test_fibre_counts(args, g, pts):
    rep = count_points_fibre(make_fibre(*args))
    assert (rep.genus, rep.points) == (g, pts)
    assert rep.within_hasse_weil


def test_lower_bounds():
    fp = make_fibre(13, 4, 1, "x+2", 4, 1, "x+6", "63")
    assert lower_bound_fibre(fp) == 16 * 14 == 224
    assert lower_bound_fibre(fp) <= count_points_fibre(fp).points
    fp = make_fibre(13, 2, 0, "x^2+4", 4, 2, "x+5", "63")
    assert lower_bound_fibre(fp) == 112 <= 444


def test_lower_bound_61_s_equals_d_specialization():
    from recipcurves.polynomial import count_roots

    q = 11
    T = tower_for_q(q)
    fp = make_fibre(q, 3, 2, "x^2+3", 4, 1, "x+2", "61")
    c1, c2 = fp.c1, fp.c2
    n12 = count_roots(c1.f * c2.f, "Fq*", T)
    n1, n2 = count_roots(c1.f, "Fq*", T), count_roots(c2.f, "Fq*", T)
    special = 2 * 12 * (q - 1 - n12) + 2 * 4 * n1 + 2 * 3 * n2
    assert lower_bound_fibre(fp) == special
    assert special <= count_points_fibre(fp).points


@pytest.mark.parametrize("fam", ["61", "63"])
def test_general_genus_equals_closed(fam):
    n = 0
    for fp in closed_fibre_grid(fam):
        try:
            closed = genus_fibre(fp, "CLOSED" + fam)
        except HypothesisError:
            continue
        assert genus_fibre(fp) == closed
        n += 1
    assert n >= 25
