"""Kummer curves y^m = x^{eps s} f(x) f*(x)^lam over F_{q^2}.

Counting always goes through the place rule on the nonsingular model; the closed
formulas and lower bounds are kept as independent cross-checks.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .covers import DegreeDeficiency, KummerSystem
from .field_tower import FieldCtx, Tower, tower_for_q
from .polynomial import Poly, RationalFunction, count_roots, format_poly, gcd_poly, is_separable, reciprocal
from .records import RecordTable
from .reports import CountReport, is_maximal

__all__ = [
    "HypothesisError",
    "KummerCurve",
    "ReciprocalKummer",
    "closed_count",
    "count_points",
    "genus_general",
    "is_maximal",
    "lower_bound",
    "places_above",
    "proof_identity",
    "prop43_curve",
    "prop44_curve",
    "thm42_curve",
]


class HypothesisError(ValueError):
    """A formula was asked for outside its hypotheses; the message names the clause."""


def _require(cond: bool, clause: str) -> None:
    if not cond:
        raise HypothesisError(f"hypothesis failed: {clause}")


class KummerCurve:
    """y^m = h(x) for an arbitrary reduced rational function h over F_q."""

    def __init__(self, tower: Tower, m: int, h: RationalFunction, label: dict | None = None):
        if m < 2:
            raise ValueError("m must be at least 2")
        if m % tower.p == 0:
            raise ValueError(f"p = {tower.p} divides m = {m}")
        if h.ctx is not tower.small:
            raise ValueError("h must have coefficients in F_q")
        self.tower = tower
        self.m = m
        self.h = h
        self.label = dict(label or {})
        self._system = None

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def system(self) -> KummerSystem:
        if self._system is None:
            self._system = KummerSystem(self.tower, (self.m,), (self.h,))
        return self._system

    def genus_rh(self) -> int:
        return self.system.genus()

    def describe(self) -> dict:
        return {"kind": "kummer", "q": self.q, "m": self.m, "h": f"({self.h.num})/({self.h.den})", **self.label}


class ReciprocalKummer(KummerCurve):
    """The curve y^m = x^{eps s} f f*^lam with f over F_q."""

    def __init__(self, q: int, m: int, s: int, epsilon: int, lam: int, f: Poly, tower: Tower | None = None):
        tower = tower or tower_for_q(q)
        if tower.q != q:
            raise ValueError("tower does not match q")
        if f.ctx is not tower.small:
            raise ValueError("f must have coefficients in F_q")
        if epsilon not in (1, -1) or lam not in (1, -1):
            raise ValueError("epsilon and lambda must be +1 or -1")
        if s < 0:
            raise ValueError("s must be non-negative")
        if f.degree < 1:
            raise ValueError("f must have degree >= 1")
        if f(0) == 0:
            raise ValueError("f(0) must be nonzero")
        if not is_separable(f):
            raise ValueError("f must be separable")
        self.s = s
        self.epsilon = epsilon
        self.lam = lam
        self.f = f
        self.d = f.degree
        self.d1 = gcd_poly(f, reciprocal(f)).degree
        super().__init__(tower, m, self._build_h(tower.small))

    def _build_h(self, F: FieldCtx) -> RationalFunction:
        one = Poly.const(F, 1)
        xs = Poly.monomial(F, self.s)
        fstar = reciprocal(self.f)
        num, den = self.f, one
        num, den = (num * xs, den) if self.epsilon > 0 else (num, den * xs)
        num, den = (num * fstar, den) if self.lam > 0 else (num, den * fstar)
        return RationalFunction(num, den)

    @property
    def fstar(self) -> Poly:
        return reciprocal(self.f)

    # hypothesis flags: recorded, they gate only the closed formulas
    @property
    def coprime_reciprocal(self) -> bool:
        return self.d1 == 0

    @property
    def coprime_norm_one(self) -> bool:
        """(f, x^{q+1} - 1) = 1."""
        F = self.tower.small
        xq1 = Poly.monomial(F, self.q + 1) - Poly.const(F, 1)
        return gcd_poly(self.f, xq1).degree == 0

    @property
    def family(self) -> str:
        return {(-1, 1): "THM41", (1, -1): "THM51"}.get((self.epsilon, self.lam), "OTHER")

    @property
    def divisibility_flag(self) -> bool:
        if self.family == "THM41":
            return (self.q + 1) % self.m == 0
        if self.family == "THM51":
            return (self.q - 1) % self.m == 0
        return False

    def describe(self) -> dict:
        return {
            "kind": "reciprocal-kummer",
            "q": self.q,
            "m": self.m,
            "s": self.s,
            "epsilon": self.epsilon,
            "lambda": self.lam,
            "f": format_poly(self.f),
            "d": self.d,
            "d1": self.d1,
        }


def field_header(tower: Tower) -> dict:
    big = tower.big.header()
    return {**{k: big[k] for k in ("p", "n", "modulus", "xi")}, "q": tower.q, "subfield": tower.small.header()}


def genus_general(c: ReciprocalKummer) -> int:
    """Genus from the closed formula for y^m = x^{eps s} f f*^lam (needs d1 < d)."""
    if c.d1 >= c.d:
        raise HypothesisError("hypothesis failed: d1 < d (f is self-reciprocal up to a scalar); use the Riemann-Hurwitz engine")
    m, s, d, d1, eps, lam = c.m, c.s, c.d, c.d1, c.epsilon, c.lam
    bracket = math.gcd(m, s) + math.gcd(m, eps * s + d + d * lam) + d1 * math.gcd(m, lam + 1) + d1 * (m - 2)
    if bracket % 2:
        raise AssertionError("odd bracket in the genus formula")  # pragma: no cover
    return (m - 1) * d + 1 - bracket // 2


def places_above(c: KummerCurve, alpha) -> int:
    """Rational places above x = alpha (a code of F_{q^2}) or INFINITY."""
    return c.system.places_above(alpha)


def _genus(c: KummerCurve) -> tuple[int, str]:
    if isinstance(c, ReciprocalKummer) and c.d1 < c.d:
        return genus_general(c), "closed-general"
    return c.genus_rh(), "riemann-hurwitz"


def count_points(c: KummerCurve, table: RecordTable | None = None) -> CountReport:
    cert = c.system.degree_certificate()
    if not cert.ok:
        # h is a power, so the curve splits and the genus formulas do not apply
        raise DegreeDeficiency(cert)
    g, how = _genus(c)
    pts = c.system.count()
    rep = CountReport(g, pts, c.q, "place-enumeration", how, c.describe(), field_header(c.tower))
    rep.check_hasse_weil()
    return rep.classify(table)


# -- closed formulas -----------------------------------------------------------


def thm42_curve(q: int, d: int, b: int) -> ReciprocalKummer:
    """y^{q+1} = (b x^{2d} + (b^2+1) x^d + b)/x^d, i.e. f = x^d + b, s = d, m = q+1."""
    T = tower_for_q(q)
    F = T.small
    f = Poly.monomial(F, d) + Poly.const(F, b)
    return ReciprocalKummer(q, q + 1, d, -1, 1, f, T)


def prop44_curve(q: int, d: int, b: int) -> ReciprocalKummer:
    """y^{q+1} = (x^d+b)^2/x^d (up to the constant b, a (q+1)-th power)."""
    return thm42_curve(q, d, b)


def prop43_curve(q: int, d: int, b: int) -> KummerCurve:
    """y^{(q+1)/2} = (x^{2d} + b)/x^d."""
    T = tower_for_q(q)
    F = T.small
    if q % 2 == 0:
        raise HypothesisError("hypothesis failed: q odd")
    h = RationalFunction(Poly.monomial(F, 2 * d) + Poly.const(F, b), Poly.monomial(F, d))
    return KummerCurve(T, (q + 1) // 2, h, {"family": "PROP43", "d": d, "b": b})


def _match_xd_plus_b(c: KummerCurve) -> tuple[int, int] | None:
    if not isinstance(c, ReciprocalKummer):
        return None
    f = c.f
    d = f.degree
    if f.lc != 1 or any(f[i] for i in range(1, d)):
        return None
    return d, f[0]


def closed_count(c: KummerCurve, variant: str) -> tuple[int, int]:
    """(points, genus) from the closed formula of `variant` (THM42, PROP43 or PROP44)."""
    q = c.q
    F = c.tower.small
    if variant == "THM42":
        db = _match_xd_plus_b(c)
        _require(db is not None, "f = x^d + b")
        d, b = db
        _require(c.epsilon == -1 and c.lam == 1, "eps = -1 and lambda = 1")
        _require(b != 0, "b in F_q^*")
        _require(F.mul(b, b) != 1, "b^2 != 1")
        _require((q + 1) % d == 0, "d | q+1")
        _require(c.m == q + 1, "m = q+1")
        _require(c.s == d, "s = d")
        pts = d * (q * q - 1) + math.gcd(d, 2) * (q + 1) ** 2 + 4 * d - d * (q + 1) * (math.gcd(q - 1, 2) + 2)
        return pts, d * (q - 1) + 1
    if variant == "PROP44":
        db = _match_xd_plus_b(c)
        _require(db is not None, "f = x^d + b")
        d, b = db
        _require(c.epsilon == -1 and c.lam == 1, "eps = -1 and lambda = 1")
        _require(q % 2 == 1, "q odd")
        _require(d % 2 == 1, "d odd")
        _require(d % c.tower.p != 0, "p does not divide d")
        _require(b != 0 and F.mul(b, b) == 1, "b^2 = 1")
        _require(c.m == q + 1, "m = q+1")
        _require(c.s == d, "s = d")
        pts = (q * q + 1) * math.gcd(d, q + 1) + (q + 1) ** 2 * math.gcd(d, q - 1) - (3 * q + 1) * math.gcd(d, q * q - 1)
        g2 = d * (q - 1) + 2 - 2 * math.gcd(d, q + 1)
        return pts, g2 // 2
    if variant == "PROP43":
        _require(q % 2 == 1, "q odd")
        _require(c.m == (q + 1) // 2, "m = (q+1)/2")
        h = c.h
        _require(h.den.degree >= 1 and h.den == Poly.monomial(F, h.den.degree), "h = (x^{2d} + b)/x^d")
        d = h.den.degree
        b = h.num[0]
        _require(h.num == Poly.monomial(F, 2 * d) + Poly.const(F, b), "h = (x^{2d} + b)/x^d")
        _require((q * q - 1) % (4 * d) == 0, "4d | q^2 - 1")
        _require(b != 0 and F.mul(b, b) == 1, "b^2 = 1")
        pts2 = (q + 1) ** 2 * math.gcd(2 * d, q - 1) + (q * q + 1) * math.gcd(2 * d, q + 1) - 2 * d * (3 * q + 1)
        g2 = d * (q - 1) + 2 - math.gcd(2 * d, q + 1)
        return pts2 // 2, g2 // 2
    raise ValueError(f"unknown closed-count variant {variant!r}")


def closed_maximal(variant: str, q: int, d: int) -> bool:
    """The maximality criteria stated alongside the closed counts."""
    if variant == "PROP43":
        return math.gcd(2 * d, q + 1) + math.gcd(2 * d, q - 1) == 2 * (d + 1)
    if variant == "PROP44":
        if (q * q - 1) % d:
            raise HypothesisError("hypothesis failed: d | q^2 - 1")
        return math.gcd(d, q + 1) == 1 or math.gcd(d, q - 1) == 1
    raise ValueError(f"no maximality criterion for {variant!r}")


def many_points_inequality(q: int, d: int) -> bool:
    """sqrt(2) q (d(q-1)+1) + q^2 + 1 <= closed THM42 count, decided exactly."""
    pts = d * (q * q - 1) + math.gcd(d, 2) * (q + 1) ** 2 + 4 * d - d * (q + 1) * (math.gcd(q - 1, 2) + 2)
    rhs = pts - q * q - 1
    a = q * (d * (q - 1) + 1)
    # sqrt(2) a <= rhs  <=>  rhs >= 0 and 2 a^2 <= rhs^2
    return rhs >= 0 and 2 * a * a <= rhs * rhs


# -- lower bounds -----------------------------------------------------------


def _common_hypotheses(c: ReciprocalKummer) -> None:
    _require(0 <= c.s < c.m, "0 <= s < m")
    _require(c.coprime_reciprocal, "(f, f*) = 1")
    _require(c.coprime_norm_one, "(f, x^{q+1} - 1) = 1")


def lower_bound(c: ReciprocalKummer) -> int:
    q, m, s, d, f, T = c.q, c.m, c.s, c.d, c.f, c.tower
    if c.family == "THM41":
        _require((q + 1) % m == 0, "m | q+1")
        _common_hypotheses(c)
        n_small = count_roots(f, "Fq*", T)
        n_big = count_roots(f, "Fq2", T)
        return m * (math.gcd(q + 1, 2 * (d - s)) + q - 3 - 2 * n_small) + 2 * n_big
    if c.family == "THM51":
        _require((q - 1) % m == 0, "m | q-1")
        _common_hypotheses(c)
        return 2 * count_roots(f, "Fq2", T) + m * (q + 1)
    raise HypothesisError("hypothesis failed: (eps, lambda) = (-1, 1) or (1, -1)")


def proof_identity(c: ReciprocalKummer) -> int:
    """(m,s) + (m,2d-s) + 2 N_f(F_{q^2}) + m (N_h1 + N_h2), N_h over F_{q^2}^*.

    h1 = (f f*)^{q-1} - x^{s(q-1)} and h2 = sum_i (f f*)^{(q-1)i} x^{s(q-1)((q+1)/m - 1 - i)}
    are evaluated pointwise in F_{q^2}; the polynomials themselves are never expanded.
    """
    q, m, s, d = c.q, c.m, c.s, c.d
    _require(c.family == "THM41", "eps = -1 and lambda = 1")
    _require((q + 1) % m == 0, "m | q+1")
    _require(c.coprime_reciprocal, "(f, f*) = 1")
    F = c.tower.big
    qm1 = F.order - 1
    ff = (c.f * c.fstar).embed(c.tower)
    u = kernels.eval_poly_logs(F, ff.coeffs)
    j = np.arange(qm1, dtype=np.int64)
    alive = u >= 0
    zech = F.zech_table
    # h1 = xi^{(q-1)u} - xi^{(q-1)sj}
    h1_zero = alive & (((q - 1) * (u - s * j)) % qm1 == 0)
    # h2: accumulate the geometric sum term by term with Zech additions.
    K = (q + 1) // m
    acc = np.full(qm1, -1, dtype=np.int64)
    for i in range(K):
        term = ((q - 1) * (u * i + s * j * (K - 1 - i))) % qm1
        nz = acc >= 0
        out = term.copy()
        z = zech[(term[nz] - acc[nz]) % qm1]
        out[nz] = np.where(z < 0, -1, (acc[nz] + z) % qm1)
        acc = out
    h2_zero = alive & (acc < 0)
    n_h = int(h1_zero.sum()) + int(h2_zero.sum())
    n_f = count_roots(c.f, "Fq2", c.tower)
    return math.gcd(m, s) + math.gcd(m, 2 * d - s) + 2 * n_f + m * n_h
