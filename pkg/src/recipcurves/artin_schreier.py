"""Artin-Schreier curves y^q + y = f(x) f*(x) / x^s over F_{q^2}."""

from __future__ import annotations

import numpy as np

from . import kernels
from .field_tower import Tower, tower_for_q
from .kummer_curve import field_header
from .polynomial import INFINITY, Poly, RationalFunction, factor, format_poly, reciprocal
from .records import RecordTable
from .reports import CountReport


class ArtinSchreierCurve:
    def __init__(self, q: int, s: int, f: Poly, tower: Tower | None = None):
        self.tower = tower or tower_for_q(q)
        if f.ctx is not self.tower.small:
            raise ValueError("f must have coefficients in F_q")
        if s < 0:
            raise ValueError("s must be non-negative")
        if f.degree < 1:
            raise ValueError("f must have degree >= 1")
        self.q = q
        self.s = s
        self.f = f
        F = f.ctx
        self.h = RationalFunction(f * reciprocal(f), Poly.monomial(F, s))
        self.poles = self._poles()
        p = self.tower.p
        bad = [(P, e) for P, e in self.poles if e % p == 0]
        if bad:
            raise ValueError(f"pole order divisible by p = {p}: wild pole, out of scope")
        if not self.poles:
            raise ValueError("h has no poles; y^q + y = h is not an irreducible curve")

    def _poles(self) -> list[tuple[object, int]]:
        """(place, pole order) with places given by monic irreducible factors or INFINITY."""
        out = []
        if self.h.den.degree > 0:
            out.extend(factor(self.h.den))
        at_inf = self.h.num.degree - self.h.den.degree
        if at_inf > 0:
            out.append((INFINITY, at_inf))
        return out

    def describe(self) -> dict:
        return {"kind": "artin-schreier", "q": self.q, "s": self.s, "f": format_poly(self.f)}


def genus_as(c: ArtinSchreierCurve) -> int:
    """(q - 1)/2 * (-2 + sum over poles of (d_P + 1) deg P)."""
    total = -2
    for P, e in c.poles:
        deg = 1 if P is INFINITY else P.degree
        total += (e + 1) * deg
    return (c.q - 1) * total // 2


def count_as(c: ArtinSchreierCurve, table: RecordTable | None = None) -> CountReport:
    T = c.tower
    F = T.big
    q, qm1 = c.q, F.order - 1
    num, den = c.h.num.embed(T), c.h.den.embed(T)
    nl = kernels.eval_poly_logs(F, num.coeffs)
    dl = kernels.eval_poly_logs(F, den.coeffs)
    ratio = kernels.ratio_logs(nl, dl, qm1)
    # y -> y^q + y maps F_{q^2} onto F_q with fibres of size q.
    in_fq = ((ratio >= 0) & (ratio % (q + 1) == 0)) | ((nl < 0) & (dl >= 0))
    total = q * int(np.count_nonzero(in_fq))
    poles = int(np.count_nonzero(dl < 0))

    def in_subfield(a: int) -> bool:
        return T.in_subfield(a)

    # x = 0
    if den(0) == 0:
        poles += 1
    elif in_subfield(F.div(num(0), den(0))):
        total += q
    # x = infinity
    dn, dd = num.degree, den.degree
    if dn > dd:
        poles += 1
    else:
        val = F.div(num.lc, den.lc) if dn == dd else 0
        if in_subfield(val):
            total += q
    total += poles
    rep = CountReport(genus_as(c), total, q, "trace-count", "artin-schreier", c.describe(), field_header(T))
    rep.check_hasse_weil()
    return rep.classify(table)


__all__ = ["ArtinSchreierCurve", "count_as", "genus_as"]
