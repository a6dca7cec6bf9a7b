"""Dense univariate polynomials and reduced rational functions over a FieldCtx.

Coefficients are field codes (see :mod:`recipcurves.field_tower`), stored low
degree first with the leading coefficient nonzero; the zero polynomial has no
coefficients.  Polynomials print and parse in the human notation used on the
command line, e.g. ``x^4+x^2+2`` or ``xi^3*x^2+2``, where ``xi`` is the fixed
primitive element of the coefficient field.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .field_tower import FieldCtx, FieldElement, Tower


class Infinity:
    """The place at infinity of the x-line."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = Infinity()


class Poly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(c)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> Poly:
        return cls(ctx)

    @classmethod
    def const(cls, ctx: FieldCtx, c: int) -> Poly:
        return cls(ctx, [c])

    @classmethod
    def x(cls, ctx: FieldCtx) -> Poly:
        return cls(ctx, [0, 1])

    @classmethod
    def monomial(cls, ctx: FieldCtx, deg: int, c: int = 1) -> Poly:
        return cls(ctx, [0] * deg + [c])

    @classmethod
    def from_ints(cls, ctx: FieldCtx, ints: Sequence[int]) -> Poly:
        """Coefficients given as integers in the prime field, low degree first."""
        return cls(ctx, [ctx.from_int(i) for i in ints])

    # -- basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r}, F_{self.ctx.order})"

    def __str__(self) -> str:
        return format_poly(self)

    # -- ring operations ----------------------------------------------------

    def _check(self, other: Poly) -> None:
        if other.ctx is not self.ctx:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        F = self.ctx
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, [F.add(self[i], other[i]) for i in range(n)])

    def __neg__(self) -> Poly:
        F = self.ctx
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        F = self.ctx
        if not self.coeffs or not other.coeffs:
            return Poly(F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, out)

    def scale(self, c: int) -> Poly:
        F = self.ctx
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> Poly:
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Poly(self.ctx, [0] * k + list(self.coeffs))

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.ctx
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(F), self
        quo = [0] * (dq + 1)
        inv_lc = F.inv(other.lc)
        db = other.degree
        for k in range(dq, -1, -1):
            c = F.mul(rem[k + db], inv_lc)
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    if b:
                        rem[k + j] = F.sub(rem[k + j], F.mul(c, b))
        return Poly(F, quo), Poly(F, rem[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return q

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(self.ctx.inv(self.lc))

    def derivative(self) -> Poly:
        F = self.ctx
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, a: int) -> int:
        """Horner evaluation at the code a."""
        F = self.ctx
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def eval(self, a: FieldElement | int) -> FieldElement:
        code = a.code if isinstance(a, FieldElement) else a
        return FieldElement(self.ctx, self(code))

    def map_coeffs(self, ctx: FieldCtx, fn) -> Poly:
        return Poly(ctx, [fn(c) for c in self.coeffs])

    def embed(self, tower: Tower) -> Poly:
        """The same polynomial with coefficients pushed into F_{q^2}."""
        if self.ctx is tower.big:
            return self
        if self.ctx is not tower.small:
            raise ValueError("polynomial is not over the tower's F_q")
        return self.map_coeffs(tower.big, tower.embed)

    def powmod(self, e: int, mod: Poly) -> Poly:
        result = Poly.const(self.ctx, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            e >>= 1
        return result


# -- named operations -------------------------------------------------------


def reciprocal(f: Poly) -> Poly:
    """x^deg(f) * f(1/x): the coefficient sequence reversed."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no reciprocal")
    return Poly(f.ctx, reversed(f.coeffs))


def gcd_poly(f: Poly, g: Poly) -> Poly:
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_separable(f: Poly) -> bool:
    if f.degree < 1:
        raise ValueError("separability needs a nonconstant polynomial")
    return gcd_poly(f, f.derivative()).degree == 0


def count_roots(f: Poly, subset, tower: Tower | None = None) -> int:
    """Number of distinct roots of f in ``subset``.

    ``subset`` is an iterable of codes (of f's field or of F_{q^2}), or one of the
    names ``"Fq*"``, ``"Fq"``, ``"Fq2"``, ``"Fq2*"``, ``"mu"`` (the norm-one group
    mu_{q+1}); the named sets need ``tower`` and count roots inside F_{q^2}.
    """
    if isinstance(subset, str):
        if tower is None:
            raise ValueError("named subsets need a tower")
        g = f.embed(tower)
        if subset in ("Fq2", "Fq2*"):
            from . import kernels

            vals = kernels.eval_poly_logs(tower.big, g.coeffs)
            n = int((vals < 0).sum())
            if subset == "Fq2" and g(0) == 0:
                n += 1
            return n
        if subset == "Fq":
            pts = tower.subfield_codes()
        elif subset == "Fq*":
            pts = tower.subfield_codes(nonzero=True)
        elif subset == "mu":
            pts = tower.norm_one()
        else:
            raise ValueError(f"unknown subset {subset!r}")
        return sum(1 for a in pts if g(a) == 0)
    g = f
    pts = list(subset)
    if tower is not None and f.ctx is tower.small:
        g = f.embed(tower)
    return sum(1 for a in set(pts) if g(a) == 0)


# -- rational functions and branch data -------------------------------------


class RationalFunction:
    """num/den in lowest terms with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.ctx, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.ctx is not den.ctx:
            raise ValueError("numerator and denominator over different fields")
        if num.is_zero():
            self.num, self.den = num, Poly.const(num.ctx, 1)
            return
        g = gcd_poly(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc
        self.num = num.scale(num.ctx.inv(lc))
        self.den = den.monic()

    @property
    def ctx(self) -> FieldCtx:
        return self.num.ctx

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalFunction) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction(self.num * other.num, self.den * other.den)

    def inverse(self) -> RationalFunction:
        return RationalFunction(self.den, self.num)

    def embed(self, tower: Tower) -> RationalFunction:
        return RationalFunction(self.num.embed(tower), self.den.embed(tower))

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree <= 0

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num})/({self.den}))"


@dataclass(frozen=True)
class BranchData:
    """h = (x - point)^k * g with g(point) = unit != 0 (at INFINITY: uniformizer 1/x)."""

    point: object
    k: int
    unit: int


def _strip_linear(f: Poly, alpha: int) -> tuple[int, Poly]:
    """Repeated synthetic division by (x - alpha); returns (multiplicity, cofactor)."""
    F = f.ctx
    k = 0
    while True:
        # synthetic division
        out = [0] * (len(f.coeffs) - 1)
        acc = 0
        for i in range(len(f.coeffs) - 1, 0, -1):
            acc = F.add(F.mul(acc, alpha), f.coeffs[i])
            out[i - 1] = acc
        rem = F.add(F.mul(acc, alpha), f.coeffs[0])
        if rem != 0:
            return k, f
        f = Poly(F, out)
        k += 1


def branch_decompose(h: RationalFunction, alpha) -> BranchData:
    """Order of vanishing of h at alpha (negative at poles) and the unit value there."""
    F = h.ctx
    if alpha is INFINITY:
        k = h.den.degree - h.num.degree
        return BranchData(INFINITY, k, F.div(h.num.lc, h.den.lc))
    kn, gn = _strip_linear(h.num, alpha)
    kd, gd = _strip_linear(h.den, alpha)
    if kn and kd:
        raise ValueError("rational function is not reduced at alpha")
    return BranchData(alpha, kn - kd, F.div(gn(alpha), gd(alpha)))


# -- factorisation ----------------------------------------------------------


def _pth_root(f: Poly) -> Poly:
    F = f.ctx
    p = F.p
    # c^(1/p) = c^(p^(n-1)) on F_{p^n}
    e = p ** (F.n - 1)
    return Poly(F, [F.pow(f.coeffs[i], e) for i in range(0, len(f.coeffs), p)])


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic squarefree, pairwise coprime parts with multiplicities (char-p safe)."""
    f = f.monic()
    if f.degree <= 0:
        return []
    p = f.ctx.p
    out: list[tuple[Poly, int]] = []
    df = f.derivative()
    if df.is_zero():
        return [(g, m * p) for g, m in squarefree_decomposition(_pth_root(f))]
    c = gcd_poly(f, df)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = gcd_poly(w, c)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c.exact_div(y)
    if c.degree > 0:
        out.extend((g, m * p) for g, m in squarefree_decomposition(_pth_root(c)))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    F = f.ctx
    q = F.order
    x = Poly.x(F)
    out = []
    h = x % f
    i = 0
    while f.degree >= 2 * (i + 1):
        i += 1
        h = h.powmod(q, f)
        g = gcd_poly(f, h - x)
        if g.degree > 0:
            out.append((g, i))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.degree == d:
        return [f.monic()]
    F = f.ctx
    q = F.order
    while True:
        a = Poly(F, [rng.randrange(q) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        if q % 2:
            b = a.powmod((q**d - 1) // 2, f) - Poly.const(F, 1)
        else:
            # absolute trace to F_2: a + a^2 + ... + a^(2^(n d - 1))
            b = Poly(F)
            t = a % f
            for _ in range(F.n * d):
                b = b + t
                t = (t * t) % f
        g = gcd_poly(f, b) if not b.is_zero() else f.monic()
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f.exact_div(g), d, rng)


def _sort_key(f: Poly):
    return (f.degree, f.coeffs)


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coefficients)."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(20221)
    acc: dict[Poly, int] = {}
    for part, mult in squarefree_decomposition(f):
        for block, d in _distinct_degree(part):
            for irr in _equal_degree(block, d, rng):
                acc[irr] = acc.get(irr, 0) + mult
    return sorted(acc.items(), key=lambda t: _sort_key(t[0]))


def squarefree_multiplicity_profile(h: RationalFunction) -> list[tuple[Poly, int]]:
    """Irreducible factors of num and den with signed multiplicities (den negative)."""
    prof = dict(factor(h.num)) if h.num.degree > 0 else {}
    if h.den.degree > 0:
        for g, m in factor(h.den):
            prof[g] = prof.get(g, 0) - m
    return sorted(((g, m) for g, m in prof.items() if m), key=lambda t: _sort_key(t[0]))


# -- notation ---------------------------------------------------------------


def format_element(ctx: FieldCtx, a: int) -> str:
    if a < ctx.p:
        return str(a)
    k = ctx.log(a)
    return "xi" if k == 1 else f"xi^{k}"


def format_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    F = f.ctx
    terms = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(format_element(F, c))
        elif c == 1:
            terms.append(mono)
        else:
            cs = format_element(F, c)
            terms.append(f"{cs}*{mono}" if cs.startswith("xi") else f"{cs}{mono}")
    return "+".join(terms)


_TOKEN = re.compile(r"\s*(?:(\d+)|(xi|ξ)|(x)|(\^)|([+\-*()]))")


class _Parser:
    def __init__(self, text: str, ctx: FieldCtx, xi: int | None = None):
        self.ctx = ctx
        self.xi = ctx.xi if xi is None else xi
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
            pos = m.end()
            if m.group(1):
                self.toks.append(("int", int(m.group(1))))
            elif m.group(2):
                self.toks.append(("xi", None))
            elif m.group(3):
                self.toks.append(("x", None))
            elif m.group(4):
                self.toks.append(("^", None))
            else:
                self.toks.append((m.group(5), None))
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            raise ValueError(f"expected {kind!r}, got {tok[0]!r}")
        self.i += 1
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input in polynomial at token {self.i}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() in ("*", "int", "xi", "x", "("):
            if self.peek() == "*":
                self.take()
            acc = acc * self.factor()
        return acc

    def exponent(self) -> int:
        if self.peek() == "^":
            self.take()
            return self.take("int")[1]
        return 1

    def factor(self) -> Poly:
        F = self.ctx
        kind = self.peek()
        if kind == "int":
            base = Poly.const(F, F.from_int(self.take()[1]))
        elif kind == "xi":
            self.take()
            return Poly.const(F, F.pow(self.xi, self.exponent()))
        elif kind == "x":
            self.take()
            base = Poly.x(F)
        elif kind == "(":
            self.take()
            base = self.expr()
            self.take(")")
        else:
            raise ValueError(f"unexpected token {kind!r}")
        return base ** self.exponent()


def parse_poly(text: str, ctx: FieldCtx, xi: int | None = None) -> Poly:
    """Parse e.g. ``"x^4+x^2+2"``, ``"xi^3*x^2+2"``, ``"x^3+14x+2"`` over ctx.

    ``xi`` substitutes another element for the symbol xi (default: the field's
    primitive element).
    """
    return _Parser(text, ctx, xi).parse()
