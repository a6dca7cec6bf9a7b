"""Finite fields F_p^n with Zech-logarithm tables, and the tower F_p < F_q < F_{q^2}.

Elements are encoded as integer *codes*: the coefficient vector (c_0, ..., c_{n-1})
of the polynomial-basis representation packed as sum(c_i * p**i).  Code 0 is the
zero element and code 1 is the identity.  All multiplicative work goes through
discrete logs to a fixed primitive element ``xi``; addition goes through the Zech
table ``zech[k] = log(1 + xi**k)``.

``FieldCtx`` methods take and return codes (that is what the polynomial and
counting layers use); ``FieldElement`` wraps a code for interactive arithmetic.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_FIELD_ORDER = 2**21

#: Log-domain sentinel for the zero element.
LOG_ZERO = -1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    f = 3
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, n) with q == p**n, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = ps[0]
    n = 0
    while q > 1:
        q //= p
        n += 1
    return p, n


# -- dense polynomials over the prime field, lists low -> high -----------------

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lc = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lc % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _fp_trim(a)
    return a


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_mod(_fp_trim(out), m, p)


def _fp_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, m, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _fp_trim(out)


def is_irreducible_fp(f: list[int], p: int) -> bool:
    """Rabin's irreducibility test for a monic f over F_p (coefficients low -> high)."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _fp_trim(_fp_sub(_fp_powmod(x, p**n, f, p), x, p)):
        return False
    for r in prime_factors(n):
        h = _fp_sub(_fp_powmod(x, p ** (n // r), f, p), x, p)
        if len(_fp_gcd(f, h, p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over F_p.

    Candidates x^n + c_{n-1} x^{n-1} + ... + c_0 are ordered by the integer
    sum(c_i p^i), i.e. lexicographically on (c_{n-1}, ..., c_0).
    """
    for code in range(p**n):
        coeffs = []
        c = code
        for _ in range(n):
            coeffs.append(c % p)
            c //= p
        if n > 1 and coeffs[0] == 0:
            continue
        f = coeffs + [1]
        if is_irreducible_fp(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The field F_{p^n} in polynomial basis, with exp/log/Zech tables.

    The context is immutable after construction and safe to share between threads.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        order = p**n
        if order > MAX_FIELD_ORDER:
            raise ValueError(f"field of order {order} exceeds the enumeration guard {MAX_FIELD_ORDER}")
        if modulus is None:
            modulus = smallest_irreducible(p, n)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1 or not is_irreducible_fp(list(modulus), p):
                raise ValueError(f"modulus {modulus} is not a monic irreducible of degree {n} over F_{p}")
        self.p = p
        self.n = n
        self.order = order
        self.modulus = modulus
        self.xi = self._find_primitive()
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.n):
            out.append(code % self.p)
            code //= self.p
        return out

    def _undigits(self, digits) -> int:
        code = 0
        for c in reversed(list(digits)[: self.n]):
            code = code * self.p + int(c)
        return code

    def slow_mul(self, a: int, b: int) -> int:
        """Table-free product of two codes (polynomial multiplication mod the modulus)."""
        prod = _fp_mulmod(_fp_trim(self._digits(a)), _fp_trim(self._digits(b)), list(self.modulus), self.p)
        return self._undigits(prod + [0] * (self.n - len(prod)))

    def slow_pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.slow_mul(result, base)
            base = self.slow_mul(base, base)
            e >>= 1
        return result

    def slow_add(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def _find_primitive(self) -> int:
        qm1 = self.order - 1
        if qm1 == 1:
            return 1
        exps = [qm1 // r for r in prime_factors(qm1)]
        for cand in range(2, self.order):
            if all(self.slow_pow(cand, e) != 1 for e in exps):
                return cand
        raise AssertionError("no primitive element")  # pragma: no cover

    def _mul_codes_by(self, codes: np.ndarray, c: int) -> np.ndarray:
        """Vectorised table-free product codes * c (an F_p-linear map on digit vectors)."""
        p, n = self.p, self.n
        # Row i holds the digits of t^i * c reduced mod the modulus.
        mat = np.array([self._digits(self.slow_mul(p**i, c)) for i in range(n)], dtype=np.int64)
        digs = np.empty((len(codes), n), dtype=np.int64)
        rest = codes.astype(np.int64)
        for i in range(n):
            digs[:, i] = rest % p
            rest //= p
        prod = (digs @ mat) % p
        weights = p ** np.arange(n, dtype=np.int64)
        return prod @ weights

    def _build_tables(self) -> None:
        Q, p = self.order, self.p
        qm1 = Q - 1
        exp = np.empty(qm1, dtype=np.int64)
        exp[0] = 1
        filled = 1
        while filled < qm1:
            step = self.slow_mul(int(exp[filled - 1]), self.xi)  # xi**filled
            take = min(filled, qm1 - filled)
            exp[filled : filled + take] = self._mul_codes_by(exp[:take], step)
            filled += take
        log = np.full(Q, LOG_ZERO, dtype=np.int64)
        log[exp] = np.arange(qm1, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError("xi is not primitive")  # pragma: no cover
        low = exp % p
        plus_one = exp - low + (low + 1) % p
        zech = log[plus_one]
        self.exp_table = exp
        self.log_table = log
        self.zech_table = zech
        for arr in (exp, log, zech):
            arr.setflags(write=False)
        # Python-int views for the scalar paths.
        self._exp = array("q", exp.tobytes())
        self._log = array("q", log.tobytes())
        self._zech = array("q", zech.tobytes())
        self.minus_one = 1 if p == 2 else self._exp[qm1 // 2]

    # -- scalar arithmetic on codes -----------------------------------------

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.order - 1)]

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        qm1 = self.order - 1
        la, lb = self._log[a], self._log[b]
        z = self._zech[(lb - la) % qm1]
        if z < 0:
            return 0
        return self._exp[(la + z) % qm1]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        return self._exp[(self._log[a] + (self.order - 1) // 2) % (self.order - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def from_int(self, k: int) -> int:
        """Image of the integer k in the prime subfield."""
        return k % self.p

    def is_nth_power(self, c: int, nn: int) -> bool:
        if c == 0:
            raise ValueError("zero has no power class; handle it before calling")
        if nn <= 0:
            raise ValueError("nn must be positive")
        return self._log[c] % math.gcd(nn, self.order - 1) == 0

    def element_order(self, a: int) -> int:
        qm1 = self.order - 1
        return qm1 // math.gcd(self.log(a), qm1)

    def digits(self, a: int) -> tuple[int, ...]:
        return tuple(self._digits(a))

    def codes(self) -> list[int]:
        """All codes in the canonical order 0, xi^0, xi^1, ..."""
        return [0, *self._exp]

    def element(self, a: int) -> FieldElement:
        return FieldElement(self, a)

    def header(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "order": self.order,
            "modulus": list(self.modulus),
            "xi": list(self.digits(self.xi)),
        }

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, n={self.n})"


@dataclass(frozen=True, eq=False)
class FieldElement:
    ctx: FieldCtx
    code: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError("elements belong to different fields")
            return other.code
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.ctx, self.ctx.div(self.code, b))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, int):
            return self.code == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    @property
    def rep(self) -> tuple[int, ...]:
        return self.ctx.digits(self.code)

    def log(self) -> int:
        return self.ctx.log(self.code)

    def __repr__(self) -> str:
        return f"FieldElement({self.rep}, F_{self.ctx.order})"


class Tower:
    """F_q inside F_{q^2}, with the embedding and Frobenius x -> x^q."""

    def __init__(self, p: int, n: int):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if p ** (2 * n) > MAX_FIELD_ORDER:
            raise ValueError(f"F_{{q^2}} of order {p ** (2 * n)} exceeds the enumeration guard {MAX_FIELD_ORDER}")
        self.p = p
        self.n = n
        self.small = FieldCtx(p, n)
        self.big = FieldCtx(p, 2 * n)
        self.q = self.small.order
        self.Q = self.big.order
        self._embed = self._build_embedding()
        self._restrict = {b: a for a, b in enumerate(self._embed)}

    def _build_embedding(self) -> list[int]:
        big, small = self.big, self.small
        # First root of the small modulus among 0, xi^0, xi^(q+1), ... (roots lie in the subfield).
        root = None
        step = (big.order - 1) // (small.order - 1) if small.order > 2 else big.order - 1
        candidates = [0] + [big.exp(k) for k in range(0, big.order - 1, step)]
        for r in candidates:
            acc = 0
            for c in reversed(small.modulus):
                acc = big.add(big.mul(acc, r), big.from_int(c))
            if acc == 0:
                root = r
                break
        assert root is not None
        table = []
        for code in range(small.order):
            acc = 0
            for c in reversed(small.digits(code)):
                acc = big.add(big.mul(acc, root), big.from_int(c))
            table.append(acc)
        return table

    def embed(self, a: int) -> int:
        return self._embed[a]

    def restrict(self, a: int) -> int:
        """Preimage in F_q of an element of the embedded subfield."""
        try:
            return self._restrict[a]
        except KeyError:
            raise ValueError("element is not in the subfield F_q") from None

    def frobenius(self, a: int) -> int:
        """a -> a^q on F_{q^2}."""
        return self.big.pow(a, self.q)

    def in_subfield(self, a: int) -> bool:
        return a == 0 or self.big.log(a) % (self.q + 1) == 0

    def norm_one(self) -> list[int]:
        """The group mu_{q+1} of elements with a^{q+1} = 1."""
        return [self.big.exp(k) for k in range(0, self.Q - 1, self.q - 1)]

    def subfield_codes(self, nonzero: bool = False) -> list[int]:
        out = [self._embed[a] for a in self.small.codes()]
        return out[1:] if nonzero else out

    def header(self) -> dict:
        return {"p": self.p, "n": self.n, "q": self.q, "F_q": self.small.header(), "F_q2": self.big.header()}

    def __repr__(self) -> str:
        return f"Tower(p={self.p}, n={self.n})"


@lru_cache(maxsize=None)
def make_tower(p: int, n: int) -> Tower:
    """Build (and memoise) the tower F_p < F_{p^n} < F_{p^{2n}}."""
    return Tower(p, n)


def tower_for_q(q: int) -> Tower:
    p, n = prime_power(q)
    return make_tower(p, n)


def is_nth_power(c: FieldElement, nn: int) -> bool:
    """True iff y**nn == c has a solution in the field of c."""
    return c.ctx.is_nth_power(c.code, nn)


def frobenius(tower: Tower, a: FieldElement) -> FieldElement:
    if a.ctx is not tower.big:
        raise ValueError("frobenius acts on F_{q^2}")
    return FieldElement(tower.big, tower.frobenius(a.code))


def enumerate_elements(ctx: FieldCtx) -> list[FieldElement]:
    return [FieldElement(ctx, a) for a in ctx.codes()]
