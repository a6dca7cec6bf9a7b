"""Shared engine for one Kummer cover y^m = h(x), or the fibre product of two.

Everything here is phrased for a list of ``(m_i, h_i)`` pairs with one or two
entries.  A single cover is the case m2 = 1, h2 = 1, and every formula below
collapses to the familiar one-cover rule in that case.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .field_tower import LOG_ZERO, Tower
from .polynomial import INFINITY, BranchData, Poly, RationalFunction, branch_decompose, factor


def lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class BranchPoint:
    """A closed point of the x-line with the orders of each h_i there.

    ``factor`` is a monic irreducible polynomial (degree = number of geometric
    points it stands for) or INFINITY.
    """

    factor: object
    ks: tuple[int, ...]

    @property
    def degree(self) -> int:
        return 1 if self.factor is INFINITY else self.factor.degree


@dataclass(frozen=True)
class DegreeCertificate:
    degree: int
    expected: int
    kernel_size: int
    witness: tuple[int, int, int] | None = None

    @property
    def ok(self) -> bool:
        return self.degree == self.expected


class DegreeDeficiency(ValueError):
    """The cover has degree below its nominal degree over the x-line (reducible)."""

    def __init__(self, cert: DegreeCertificate):
        a, b, n = cert.witness
        power = f"h^{a}" if b == 0 else f"h1^{a} * h2^{b}"
        super().__init__(f"cover has degree {cert.degree} < {cert.expected}: {power} is a perfect power of order {n}")
        self.certificate = cert


def kappa(ms: tuple[int, ...], ks: tuple[int, ...]) -> int:
    """Number of geometric places above a point with orders ks (tame compositum)."""
    if len(ms) == 1:
        return math.gcd(ms[0], ks[0])
    m1, m2 = ms
    k1, k2 = ks
    return math.gcd(m1 * m2, k1 * m2, k2 * m1)


def unit_lattice_basis(ms: tuple[int, int], ks: tuple[int, int]) -> list[tuple[int, int]]:
    """Basis of L = {(a, b) : a*k1*M/m1 + b*k2*M/m2 = 0 mod M}, M = lcm(m1, m2)."""
    m1, m2 = ms
    k1, k2 = ks
    M = lcm(m1, m2)
    A = (k1 * (M // m1)) % M
    B = (k2 * (M // m2)) % M
    gA = math.gcd(A, M)
    b0 = gA // math.gcd(gA, B)
    Mp = M // gA
    if Mp == 1:
        a0 = 0
    else:
        rhs = (-b0 * B) // gA
        a0 = (rhs * pow(A // gA, -1, Mp)) % Mp
    return [(Mp, 0), (a0, b0)]


@dataclass
class KummerSystem:
    """y_i^{m_i} = h_i(x), i = 1 or 1, 2, over F_{q^2}.

    The h_i are reduced rational functions over F_q or over F_{q^2}.
    """

    tower: Tower
    ms: tuple[int, ...]
    hs: tuple[RationalFunction, ...]
    _big: tuple[RationalFunction, ...] = field(init=False, repr=False)

    def __post_init__(self):
        self.ms = tuple(int(m) for m in self.ms)
        self.hs = tuple(self.hs)
        if len(self.ms) not in (1, 2) or len(self.ms) != len(self.hs):
            raise ValueError("a system has one or two covers")
        p = self.tower.p
        for m, h in zip(self.ms, self.hs):
            if m < 1:
                raise ValueError("cover degree must be positive")
            if m % p == 0:
                raise ValueError(f"p = {p} divides the cover degree {m} (wild cover)")
            if h.num.is_zero():
                raise ValueError("h must be nonzero")
        if len(self.ms) == 2:
            M = lcm(*self.ms)
            if (self.tower.Q - 1) % M:
                raise ValueError(f"lcm(m1, m2) = {M} must divide q^2 - 1 for the fibre splitting rule")
        self._big = tuple(h.embed(self.tower) if h.ctx is self.tower.small else h for h in self.hs)

    @property
    def degree(self) -> int:
        return math.prod(self.ms)

    # -- geometry -----------------------------------------------------------

    def branch_points(self) -> list[BranchPoint]:
        """Closed points where some h_i has nonzero order, infinity last."""
        orders: dict[Poly, list[int]] = {}
        n = len(self.hs)
        for i, h in enumerate(self.hs):
            for poly, sign in ((h.num, 1), (h.den, -1)):
                if poly.degree <= 0:
                    continue
                for g, mult in factor(poly):
                    orders.setdefault(g, [0] * n)[i] += sign * mult
        pts = [BranchPoint(g, tuple(ks)) for g, ks in sorted(orders.items(), key=lambda t: (t[0].degree, t[0].coeffs))]
        inf = tuple(h.den.degree - h.num.degree for h in self.hs)
        if any(inf):
            pts.append(BranchPoint(INFINITY, inf))
        return pts

    def genus(self) -> int:
        """Tame Riemann-Hurwitz over the x-line, grouping conjugate points by factor."""
        N = self.degree
        total = -2 * N
        for bp in self.branch_points():
            total += bp.degree * (N - kappa(self.ms, bp.ks))
        if total % 2:
            raise AssertionError("Riemann-Hurwitz produced an odd 2g - 2")  # pragma: no cover
        return total // 2 + 1

    def degree_certificate(self) -> DegreeCertificate:
        """Geometric degree of the compositum via the exponent lattice of h_1, h_2."""
        bps = [bp for bp in self.branch_points() if bp.factor is not INFINITY]
        if len(self.ms) == 1:
            m = self.ms[0]
            g = m
            for bp in bps:
                g = math.gcd(g, bp.ks[0])
            witness = None if g == 1 else (1, 0, g)
            return DegreeCertificate(m // g, m, g, witness)
        m1, m2 = self.ms
        M = lcm(m1, m2)
        v1 = np.array([bp.ks[0] for bp in bps], dtype=np.int64) * (M // m1)
        v2 = np.array([bp.ks[1] for bp in bps], dtype=np.int64) * (M // m2)
        kernel = []
        for a, b in itertools.product(range(m1), range(m2)):
            if not ((a * v1 + b * v2) % M).any():
                kernel.append((a, b))
        witness = None
        if len(kernel) > 1:

            def centred(t, mod):
                return t - mod if t > mod // 2 else t

            cands = [(centred(a, m1), centred(b, m2)) for a, b in kernel if (a, b) != (0, 0)]
            a, b = min(cands, key=lambda ab: (abs(ab[0]) + abs(ab[1]), -ab[0], -ab[1]))
            ea, eb = a * (M // m1), b * (M // m2)
            g = math.gcd(math.gcd(ea, eb), M)
            witness = (ea // g, eb // g, M // g)
        return DegreeCertificate(m1 * m2 // len(kernel), m1 * m2, len(kernel), witness)

    # -- arithmetic of places ------------------------------------------------

    def branch_data(self, alpha) -> tuple[BranchData, ...]:
        """Branch data of every h_i at alpha (a code of F_{q^2} or INFINITY)."""
        return tuple(branch_decompose(h, alpha) for h in self._big)

    def places_from_data(self, data: tuple[BranchData, ...]) -> tuple[int, bool]:
        """(kappa, rational): kappa geometric places, all rational or none."""
        F = self.tower.big
        qm1 = F.order - 1
        if len(self.ms) == 1:
            m = self.ms[0]
            bd = data[0]
            g = math.gcd(m, bd.k)
            # The unit must be a g-th power; then W^g = unit has gcd(g, Q-1) roots.
            n = math.gcd(g, qm1)
            rational = F.log(bd.unit) % n == 0
            return n, rational
        m1, m2 = self.ms
        ks = (data[0].k, data[1].k)
        kap = kappa(self.ms, ks)
        M = lcm(m1, m2)
        l1, l2 = F.log(data[0].unit), F.log(data[1].unit)
        rational = all((a * (M // m1) * l1 + b * (M // m2) * l2) % M == 0 for a, b in unit_lattice_basis(self.ms, ks))
        return kap, rational

    def places_above(self, alpha) -> int:
        kap, rational = self.places_from_data(self.branch_data(alpha))
        return kap if rational else 0

    def value_logs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """Logs of num_i(xi^j) and den_i(xi^j) over all of F_{q^2}^*."""
        F = self.tower.big
        return [(kernels.eval_poly_logs(F, h.num.coeffs), kernels.eval_poly_logs(F, h.den.coeffs)) for h in self._big]

    def count(self) -> int:
        """Exact number of F_{q^2}-rational places."""
        F = self.tower.big
        qm1 = F.order - 1
        vals = self.value_logs()
        ratios = [kernels.ratio_logs(n, d, qm1) for n, d in vals]
        special = np.zeros(qm1, dtype=bool)
        for r in ratios:
            special |= r < 0
        if len(self.ms) == 1:
            n = math.gcd(self.ms[0], qm1)
            total = n * kernels.count_joint_residues(ratios[0], n, np.zeros(qm1, dtype=np.int64), 1)
        else:
            g1, g2 = math.gcd(self.ms[0], qm1), math.gcd(self.ms[1], qm1)
            total = g1 * g2 * kernels.count_joint_residues(ratios[0], g1, ratios[1], g2)
        for j in np.flatnonzero(special):
            total += self.places_above(F.exp(int(j)))
        total += self.places_above(0)
        total += self.places_above(INFINITY)
        return total

    def place_table(self) -> dict:
        """Places above every point, for small fields and debugging."""
        F = self.tower.big
        out = {0: self.places_above(0), INFINITY: self.places_above(INFINITY)}
        for j in range(F.order - 1):
            a = F.exp(j)
            out[a] = self.places_above(a)
        return out


def constant_rf(ctx) -> RationalFunction:
    return RationalFunction(Poly.const(ctx, 1))


__all__ = [
    "BranchPoint",
    "DegreeCertificate",
    "DegreeDeficiency",
    "KummerSystem",
    "LOG_ZERO",
    "kappa",
    "lcm",
    "unit_lattice_basis",
]
