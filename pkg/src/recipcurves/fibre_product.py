"""Fibre products of two reciprocal Kummer covers of the x-line."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .covers import DegreeCertificate, DegreeDeficiency, KummerSystem, kappa
from .field_tower import Tower, tower_for_q
from .kummer_curve import HypothesisError, _require, field_header
from .polynomial import Poly, RationalFunction, count_roots, format_poly, gcd_poly, is_separable, reciprocal
from .records import RecordTable
from .reports import SUSPECT, CountReport

# (epsilon, lambda) for the two shapes
FAMILIES = {"61": (-1, 1), "63": (1, -1)}


@dataclass(frozen=True)
class Component:
    m: int
    s: int
    f: Poly

    @property
    def d(self) -> int:
        return self.f.degree


def component_h(c: Component, epsilon: int, lam: int) -> RationalFunction:
    F = c.f.ctx
    xs = Poly.monomial(F, c.s)
    fstar = reciprocal(c.f)
    num, den = c.f, Poly.const(F, 1)
    num, den = (num * xs, den) if epsilon > 0 else (num, den * xs)
    num, den = (num * fstar, den) if lam > 0 else (num, den * fstar)
    return RationalFunction(num, den)


@dataclass
class FibreProduct:
    q: int
    c1: Component
    c2: Component
    family: str = "61"
    tower: Tower | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {sorted(FAMILIES)}")
        self.tower = self.tower or tower_for_q(self.q)
        p = self.tower.p
        for i, c in enumerate((self.c1, self.c2), start=1):
            if c.f.ctx is not self.tower.small:
                raise ValueError(f"f{i} must have coefficients in F_q")
            if c.m < 1 or c.m % p == 0:
                raise ValueError(f"m{i} = {c.m} must be positive and prime to p = {p}")
            if c.s < 0:
                raise ValueError(f"s{i} must be non-negative")
            if c.f.degree < 1 or c.f(0) == 0:
                raise ValueError(f"f{i} must have degree >= 1 and f{i}(0) != 0")
            if not is_separable(c.f):
                raise ValueError(f"f{i} must be separable")
            if c.s >= c.m:
                self.notes.append(f"s{i} = {c.s} >= m{i} = {c.m} (outside 0 <= s_i < m_i)")
        eps, lam = FAMILIES[self.family]
        self.hs = (component_h(self.c1, eps, lam), component_h(self.c2, eps, lam))
        self.system = KummerSystem(self.tower, (self.c1.m, self.c2.m), self.hs)

    @property
    def kappa(self) -> int:
        """gcd(m1 m2, s1 m2, s2 m1)."""
        m1, m2 = self.c1.m, self.c2.m
        return math.gcd(m1 * m2, self.c1.s * m2, self.c2.s * m1)

    # recorded hypothesis flags
    def coprimality_flags(self) -> dict:
        f1, f2 = self.c1.f, self.c2.f
        g1, g2 = f1 * reciprocal(f1), f2 * reciprocal(f2)
        F = self.tower.small
        xq1 = Poly.monomial(F, self.q + 1) - Poly.const(F, 1)
        return {
            "f1_f1star": gcd_poly(f1, reciprocal(f1)).degree == 0,
            "f2_f2star": gcd_poly(f2, reciprocal(f2)).degree == 0,
            "f1f1star_f2f2star": gcd_poly(g1, g2).degree == 0,
            "f1_norm_one": gcd_poly(f1, xq1).degree == 0,
            "f2_norm_one": gcd_poly(f2, xq1).degree == 0,
        }

    def describe(self) -> dict:
        return {
            "kind": "fibre-product",
            "family": self.family,
            "q": self.q,
            "m1": self.c1.m,
            "s1": self.c1.s,
            "f1": format_poly(self.c1.f),
            "m2": self.c2.m,
            "s2": self.c2.s,
            "f2": format_poly(self.c2.f),
        }


def make_fibre(q: int, m1: int, s1: int, f1: str | Poly, m2: int, s2: int, f2: str | Poly, family: str = "61") -> FibreProduct:
    from .polynomial import parse_poly

    T = tower_for_q(q)
    F = T.small
    p1 = parse_poly(f1, F) if isinstance(f1, str) else f1
    p2 = parse_poly(f2, F) if isinstance(f2, str) else f2
    return FibreProduct(q, Component(m1, s1, p1), Component(m2, s2, p2), family, T)


def validate_fibre(fp: FibreProduct) -> DegreeCertificate:
    """Degree of the compositum over the x-line, with a witness when it falls short."""
    return fp.system.degree_certificate()


def kappa_at(fp: FibreProduct, alpha) -> tuple[int, bool]:
    """(kappa_alpha, rational) at a code alpha of F_{q^2} or at INFINITY."""
    return fp.system.places_from_data(fp.system.branch_data(alpha))


def _closed_hypotheses(fp: FibreProduct, divides: int, label: str) -> None:
    for i, c in enumerate((fp.c1, fp.c2), start=1):
        _require(c.m >= 2, f"m{i} >= 2")
        _require(divides % c.m == 0, f"m{i} | {label}")
    flags = fp.coprimality_flags()
    _require(flags["f1_f1star"], "(f1, f1*) = 1")
    _require(flags["f2_f2star"], "(f2, f2*) = 1")
    _require(flags["f1f1star_f2f2star"], "(f1 f1*, f2 f2*) = 1")


def genus_fibre(fp: FibreProduct, mode: str = "GENERAL") -> int:
    m1, m2 = fp.c1.m, fp.c2.m
    d1, d2 = fp.c1.d, fp.c2.d
    s1, s2 = fp.c1.s, fp.c2.s
    lead = m1 * m2 * (d1 + d2) - d1 * m2 - d2 * m1 + 1
    if mode == "GENERAL":
        return fp.system.genus()
    if mode == "CLOSED61":
        _require(fp.family == "61", "family (eps, lambda) = (-1, 1)")
        _closed_hypotheses(fp, fp.q + 1, "q+1")
        extra = fp.kappa + math.gcd(m1 * m2, m2 * (2 * d1 - s1), m1 * (2 * d2 - s2))
        if extra % 2:
            raise HypothesisError("hypothesis failed: closed genus is not an integer for these data")
        return lead - extra // 2
    if mode == "CLOSED63":
        _require(fp.family == "63", "family (eps, lambda) = (1, -1)")
        _closed_hypotheses(fp, fp.q - 1, "q-1")
        return lead - fp.kappa
    raise ValueError(f"unknown genus mode {mode!r}")


def count_points_fibre(fp: FibreProduct, table: RecordTable | None = None) -> CountReport:
    cert = validate_fibre(fp)
    if not cert.ok:
        raise DegreeDeficiency(cert)
    g = genus_fibre(fp, "GENERAL")
    pts = fp.system.count()
    rep = CountReport(g, pts, fp.q, "place-enumeration", "riemann-hurwitz", fp.describe(), field_header(fp.tower))
    rep.notes.extend(fp.notes)
    rep.check_hasse_weil()
    return rep.classify(table)


def lower_bound_fibre(fp: FibreProduct) -> int:
    q, T = fp.q, fp.tower
    c1, c2 = fp.c1, fp.c2
    for i, c in enumerate((c1, c2), start=1):
        _require(0 <= c.s < c.m, f"0 <= s{i} < m{i}")
    flags = fp.coprimality_flags()
    _require(flags["f1_norm_one"], "(f1, x^{q+1} - 1) = 1")
    _require(flags["f2_norm_one"], "(f2, x^{q+1} - 1) = 1")
    m1, m2 = c1.m, c2.m
    if fp.family == "61":
        _closed_hypotheses(fp, q + 1, "q+1")
        g = math.gcd(q + 1, 2 * (c1.d - c1.s), 2 * (c2.d - c2.s))
        n12 = count_roots(c1.f * c2.f, "Fq*", T)
        n1 = count_roots(c1.f, "Fq*", T)
        n2 = count_roots(c2.f, "Fq*", T)
        return m1 * m2 * (g + q - 3 - 2 * n12) + 2 * m2 * n1 + 2 * m1 * n2
    _closed_hypotheses(fp, q - 1, "q-1")
    return m1 * m2 * (q + 1)


__all__ = [
    "Component",
    "DegreeDeficiency",
    "FibreProduct",
    "count_points_fibre",
    "genus_fibre",
    "kappa",
    "kappa_at",
    "lower_bound_fibre",
    "make_fibre",
    "validate_fibre",
    "SUSPECT",
]
