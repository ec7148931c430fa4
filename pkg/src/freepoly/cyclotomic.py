"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored as a residue modulo the N-th cyclotomic polynomial,
i.e. a vector of ``phi(N)`` rationals on the power basis
``1, zeta_N, ..., zeta_N^(phi(N)-1)``.  Operands with different conductors
are lifted to the lcm of the conductors; the conductor of a result is never
lowered.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

__all__ = [
    "CycNum",
    "root_of_unity",
    "cyc_arith",
    "cyclotomic_polynomial",
    "euler_phi",
    "nth_roots",
    "nonzero_roots",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _mobius(n: int) -> int:
    mu, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            mu = -mu
        p += 1
    if n > 1:
        mu = -mu
    return mu


def _int_poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # low-to-high coefficients; den is monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for k in range(len(out) - 1, -1, -1):
        q = num[k + dn]
        out[k] = q
        if q:
            for j, c in enumerate(den):
                num[k + j] -= q * c
    if any(num[:dn]):
        raise ArithmeticError("inexact division of integer polynomials")
    return out


_table_lock = threading.RLock()


@lru_cache(maxsize=None)
def _cyclotomic_cached(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_divexact(poly, list(_cyclotomic_cached(d)))
    return tuple(poly)


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be positive")
    with _table_lock:
        return _cyclotomic_cached(n)


class _Field:
    """Reduction data for Q(zeta_N): the images of zeta^k, 0 <= k < 2N."""

    __slots__ = ("N", "phi", "powers", "trace")

    def __init__(self, N: int):
        self.N = N
        phi_poly = cyclotomic_polynomial(N)
        self.phi = phi = len(phi_poly) - 1
        powers: list[tuple[int, ...]] = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(2 * N):
            powers.append(tuple(cur))
            # multiply by zeta and reduce
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(phi):
                    cur[j] -= top * phi_poly[j]
        self.powers = powers
        # normalised trace of zeta^k (Ramanujan sum / phi(N))
        tr = []
        for k in range(phi):
            g = gcd(k, N)
            m = N // g
            tr.append(Fraction(_mobius(m) * phi // euler_phi(m), phi))
        self.trace = tuple(tr)


@lru_cache(maxsize=None)
def _field_cached(N: int) -> _Field:
    return _Field(N)


def _field(N: int) -> _Field:
    with _table_lock:
        return _field_cached(N)


def _reduce(vec: list, F: _Field) -> tuple:
    """Reduce a coefficient vector of arbitrary length (powers of zeta_N)."""
    phi = F.phi
    if len(vec) <= phi:
        out = list(vec) + [_ZERO] * (phi - len(vec))
        return tuple(out)
    out = list(vec[:phi])
    N = F.N
    powers = F.powers
    for k in range(phi, len(vec)):
        c = vec[k]
        if c:
            row = powers[k % N]
            for j in range(phi):
                r = row[j]
                if r:
                    out[j] += c * r
    return tuple(out)


class CycNum:
    """An element of Q(zeta_N) in canonical form.

    ``CycNum(3)`` and ``CycNum(Fraction(1, 2))`` are rationals of conductor 1;
    ``root_of_unity(k, N)`` builds powers of zeta_N.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, value=0, conductor: int = 1, *, _raw=None):
        if _raw is not None:
            self.conductor = conductor
            self.coeffs = _raw
            return
        if conductor < 1:
            raise ValueError("conductor must be positive")
        F = _field(conductor)
        if isinstance(value, CycNum):
            lifted = value._lift(conductor) if conductor % value.conductor == 0 else None
            if lifted is None:
                raise ValueError("cannot place value in a field with smaller conductor")
            self.conductor, self.coeffs = conductor, lifted
            return
        if isinstance(value, (int, Rational)):
            vec = [Fraction(value)]
        else:
            vec = [Fraction(c) for c in value]
        self.conductor = conductor
        self.coeffs = _reduce(vec, F)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _make(cls, conductor: int, coeffs: tuple) -> "CycNum":
        return cls(conductor=conductor, _raw=coeffs)

    @classmethod
    def coerce(cls, value) -> "CycNum":
        if isinstance(value, CycNum):
            return value
        if isinstance(value, (int, Rational)):
            return cls._make(1, (Fraction(value),))
        raise TypeError(f"cannot convert {value!r} to CycNum")

    def _lift(self, M: int) -> tuple:
        N = self.conductor
        if M == N:
            return self.coeffs
        step = M // N
        F = _field(M)
        vec = [_ZERO] * (step * (len(self.coeffs) - 1) + 1)
        for j, c in enumerate(self.coeffs):
            vec[j * step] = c
        return _reduce(vec, F)

    def lift(self, M: int) -> "CycNum":
        """The same element, represented with conductor ``M`` (a multiple)."""
        if M % self.conductor:
            raise ValueError(f"{M} is not a multiple of conductor {self.conductor}")
        return CycNum._make(M, self._lift(M))

    def _common(self, other: "CycNum"):
        if self.conductor == other.conductor:
            return self.conductor, self.coeffs, other.coeffs
        M = _lcm(self.conductor, other.conductor)
        return M, self._lift(M), other._lift(M)

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        M, a, b = self._common(other)
        return CycNum._make(M, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum._make(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        M, a, b = self._common(other)
        return CycNum._make(M, tuple(x - y for x, y in zip(a, b)))

    def __rsub__(self, other):
        return CycNum.coerce(other) - self

    def __mul__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_rational():
            q = other.coeffs[0]
            M = _lcm(self.conductor, other.conductor)
            a = self._lift(M)
            return CycNum._make(M, tuple(x * q for x in a))
        if self.is_rational():
            return other * self
        M, a, b = self._common(other)
        F = _field(M)
        conv = [_ZERO] * (2 * F.phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return CycNum._make(M, _reduce(conv, F))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return CycNum._make(self.conductor, (1 / self.coeffs[0],) + self.coeffs[1:])
        N = self.conductor
        modulus = [Fraction(c) for c in cyclotomic_polynomial(N)]
        s = _xgcd_inverse(list(self.coeffs), modulus)
        return CycNum._make(N, _reduce(s, _field(N)))

    def __truediv__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = CycNum._make(self.conductor, (_ONE,) + (_ZERO,) * (len(self.coeffs) - 1))
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        _, a, b = self._common(other)
        return a == b

    def __hash__(self):
        # normalised trace is independent of the representing conductor
        tr = _field(self.conductor).trace
        return hash(sum((c * t for c, t in zip(self.coeffs, tr)), _ZERO))

    def __repr__(self):
        return f"CycNum({str(self)!r})"

    def __str__(self):
        return format_cyc(self)


def format_cyc(z: CycNum) -> str:
    """Text form readable by the input parser, e.g. ``1/2 - 3*zeta(4)``."""
    parts: list[str] = []
    for k, c in enumerate(z.coeffs):
        if not c:
            continue
        if k == 0:
            mono = None
        elif k == 1:
            mono = f"zeta({z.conductor})"
        else:
            mono = f"zeta({z.conductor})^{k}"
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono is None:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _poly_trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod_q(a: list, b: list):
    a = list(a)
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError
    db = len(b) - 1
    lead = b[-1]
    q = [_ZERO] * max(len(a) - db, 0)
    for k in range(len(a) - db - 1, -1, -1):
        c = a[k + db] / lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    return q, _poly_trim(a[:db])


def _poly_mul_q(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub_q(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO)
                       for i in range(n)])


def _xgcd_inverse(a: list, m: list) -> list:
    """s with s*a == 1 (mod m) over Q, m irreducible."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [_ONE]
    while len(r1) > 1:
        q, r = _poly_divmod_q(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_q(s0, _poly_mul_q(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def root_of_unity(k: int, N: int) -> CycNum:
    """zeta_N ** k in canonical form (conductor N)."""
    if N < 1:
        raise ValueError("N must be positive")
    F = _field(N)
    row = F.powers[k % N]
    return CycNum._make(N, tuple(Fraction(c) for c in row))


def cyc_arith(op: str, a, b) -> CycNum:
    a, b = CycNum.coerce(a), CycNum.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# roots of univariate polynomials with CycNum coefficients (limited)


def _int_root(a: int, m: int):
    if a < 0:
        return None
    if a in (0, 1):
        return a
    r = round(a ** (1.0 / m))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** m == a:
            return cand
    # fall back to integer Newton for large values
    x = 1 << ((a.bit_length() + m - 1) // m)
    while True:
        y = ((m - 1) * x + a // x ** (m - 1)) // m
        if y >= x:
            break
        x = y
    return x if x ** m == a else None


def _rational_root(q: Fraction, m: int):
    """Positive rational rho with rho**m == |q|, or None."""
    num = _int_root(abs(q.numerator), m)
    den = _int_root(q.denominator, m)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def nth_roots(q, m: int) -> list[CycNum]:
    """All m-th roots of q that are a root of unity times a rational.

    Returns an empty list when no such root exists (the roots may still lie
    in some cyclotomic field, but are not found by this search).
    """
    q = CycNum.coerce(q)
    if m < 1:
        raise ValueError("m must be positive")
    if q.is_zero():
        return [CycNum(0)]
    N = q.conductor
    for k in range(1, 2 * N + 1):
        qk = q ** k
        if qk.is_rational():
            R = qk.to_rational()
            rho = _rational_root(R, m * k)
            if rho is None:
                return []
            M = _lcm(2 * m * k, N)
            out = []
            for j in range(M):
                c = root_of_unity(j, M) * rho
                if c ** m == q:
                    if not any(c == o for o in out):
                        out.append(c)
                if len(out) == m:
                    break
            return out
    return []


def _cpoly_trim(p: list) -> list:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _cpoly_divmod(a: list, b: list):
    a = list(a)
    b = _cpoly_trim(list(b))
    db = len(b) - 1
    inv = b[-1].inverse()
    q = [CycNum(0)] * max(len(a) - db, 0)
    for k in range(len(a) - db - 1, -1, -1):
        c = a[k + db] * inv
        q[k] = c
        if not c.is_zero():
            for j, bj in enumerate(b):
                a[k + j] = a[k + j] - c * bj
    return q, _cpoly_trim(a[:db])


def _cpoly_gcd(a: list, b: list) -> list:
    a, b = _cpoly_trim(list(a)), _cpoly_trim(list(b))
    while b:
        _, r = _cpoly_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def nonzero_roots(coeffs) -> list[CycNum]:
    """Nonzero roots of sum coeffs[k] * c**k that this module can express.

    Handles linear squarefree parts, binomials ``a*c^m + b`` (via
    :func:`nth_roots`) and rational roots of rational polynomials.
    """
    p = _cpoly_trim([CycNum.coerce(c) for c in coeffs])
    while p and p[0].is_zero():
        p.pop(0)
    if len(p) < 2:
        return []
    dp = [p[k] * k for k in range(1, len(p))]
    g = _cpoly_gcd(p, dp)
    sq = _cpoly_divmod(p, g)[0] if len(g) > 1 else p
    sq = _cpoly_trim(sq)
    inv = sq[-1].inverse()
    sq = [c * inv for c in sq]
    deg = len(sq) - 1
    if deg == 1:
        r = -sq[0]
        return [r] if not r.is_zero() else []
    nz = [k for k, c in enumerate(sq) if not c.is_zero()]
    if len(nz) == 2 and nz[0] == 0:
        return nth_roots(-sq[0], deg)
    if all(c.is_rational() for c in sq):
        return _rational_roots([c.to_rational() for c in sq])
    return []


def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _rational_roots(p: list[Fraction]) -> list[CycNum]:
    den = 1
    for c in p:
        den = _lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    while ints and ints[0] == 0:
        ints.pop(0)
    a0, an = ints[0], ints[-1]
    found = []
    for num in _divisors(a0):
        for d in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * num, d)
                val = sum((Fraction(c) * r ** k for k, c in enumerate(ints)), _ZERO)
                if val == 0 and r not in found:
                    found.append(r)
    return [CycNum(r) for r in found]
