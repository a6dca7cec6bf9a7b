"""Brute-force oracles shared by the tests.

They deliberately avoid the log tables and the factorization code under test.
"""

import itertools
import random

import pytest

from recipcurves.fibre_product import Component, FibreProduct, validate_fibre
from recipcurves.field_tower import FieldCtx, tower_for_q
from recipcurves.polynomial import Poly, gcd_poly, is_separable, reciprocal


def slow_power(F: FieldCtx, a: int, e: int) -> int:
    """a^e by repeated multiplication through the polynomial-basis multiply."""
    r = 1
    for _ in range(e):
        r = F.slow_mul(r, a)
    return r


def brute_nth_roots(F: FieldCtx, c: int, n: int) -> int:
    return sum(1 for y in range(1, F.order) if F.pow(y, n) == c)


def brute_roots(f: Poly, codes) -> set:
    return {a for a in codes if f(a) == 0}


def monic_polys(F: FieldCtx, d: int):
    for tail in itertools.product(range(F.order), repeat=d):
        yield Poly(F, list(tail) + [1])


def trial_factor(f: Poly) -> list[tuple[Poly, int]]:
    """Factor by trial division with every monic polynomial of degree 1, 2, ...

    Any monic divisor found at the smallest degree is irreducible.
    """
    F = f.ctx
    out = []
    g = f.monic()
    d = 1
    while g.degree >= 1:
        if 2 * d > g.degree:
            out.append((g, 1))
            break
        for h in monic_polys(F, d):
            e = 0
            while g.degree >= h.degree and (g % h).is_zero():
                g = g // h
                e += 1
            if e:
                out.append((h, e))
        d += 1
    merged = {}
    for h, e in out:
        merged[h] = merged.get(h, 0) + e
    return sorted(merged.items(), key=lambda t: (t[0].degree, t[0].coeffs))


def brute_fibre_solutions(T, m1, m2, u1, u2) -> int:
    """#{(y1, y2) in F_{q^2}^2 : y1^m1 = u1, y2^m2 = u2} by enumeration."""
    F = T.big
    n1 = sum(1 for y in range(F.order) if F.pow(y, m1) == u1)
    n2 = sum(1 for y in range(F.order) if F.pow(y, m2) == u2)
    return n1 * n2


def random_fibres(n, seed):
    """n random fibre products over small fields that pass the degree certificate."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        q = rng.choice([5, 7, 9, 11, 13])
        fam = rng.choice(["61", "63"])
        T = tower_for_q(q)
        F = T.small
        base = q + 1 if fam == "61" else q - 1
        ms = [m for m in range(2, 9) if base % m == 0 and m % T.p]
        if not ms:
            continue
        m1, m2 = rng.choice(ms), rng.choice(ms)
        polys = []
        for _ in range(2):
            d = rng.randint(1, 3)
            f = Poly(F, [rng.randrange(1, q)] + [rng.randrange(q) for _ in range(d - 1)] + [1])
            polys.append(f)
        if not all(is_separable(f) for f in polys):
            continue
        fp = FibreProduct(q, Component(m1, rng.randrange(m1), polys[0]), Component(m2, rng.randrange(m2), polys[1]), fam, T)
        if validate_fibre(fp).ok:
            out.append(fp)
    return out


def closed_fibre_grid(fam):
    """Fibre products x^d+b pairs with coprime f f* parts, for the closed genus formulas."""
    for q in (5, 7, 9, 11, 13, 17, 19):
        T = tower_for_q(q)
        F = T.small
        base = q + 1 if fam == "61" else q - 1
        ms = [m for m in range(2, 9) if base % m == 0 and m % T.p]
        polys = []
        for d in (1, 2, 4):
            for b in range(1, q):
                f = Poly.monomial(F, d) + Poly.const(F, b)
                if is_separable(f) and gcd_poly(f, reciprocal(f)).degree == 0:
                    polys.append(f)
        polys = polys[:: max(1, len(polys) // 4)][:4]
        for m1, m2 in itertools.product(ms, ms):
            for f1, f2 in itertools.combinations(polys, 2):
                g1, g2 = f1 * reciprocal(f1), f2 * reciprocal(f2)
                if gcd_poly(g1, g2).degree:
                    continue
                for s1, s2 in ((0, 1), (1, m2 - 1), (m1 - 1, 0)):
                    yield FibreProduct(q, Component(m1, s1, f1), Component(m2, s2, f2), fam, T)


@pytest.fixture(scope="session")
def record_table():
    from recipcurves.records import load_default_table

    return load_default_table()


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, from the test outcomes."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid and rep.when == "call":
                name = nodeid.split("::")[-1]
                lines.append((int(name.split("_")[2]), "PASS" if outcome == "passed" else "FAIL", name))
    if lines:
        terminalreporter.section("acceptance criteria")
        for n, verdict, name in sorted(lines):
            terminalreporter.write_line(f"{verdict} {n}: {name}")
