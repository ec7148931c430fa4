"""Truncated multivariate series with exponents in (1/n) Z^e.

A :class:`FracSeries` stores integer exponent vectors ``p`` meaning
``x^(p/n)`` for a single shared denominator ``n``, nonzero
:class:`~freepoly.cyclotomic.CycNum` coefficients, and a precision bound
``T`` on the weighted degree: every term of weight ``< T`` is present and
exact, nothing is claimed at or above ``T``.  ``precision=None`` marks an
exact (finitely supported) series.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .cones import Cone, OrderSpec, cone_contains, compare, Ordering, orthant
from .cyclotomic import CycNum, format_cyc, root_of_unity
from .exceptions import PrecisionExhausted

__all__ = [
    "FracSeries",
    "OrderData",
    "MINUS_INFINITY",
    "order_data",
    "series_arith",
    "truncate_below",
    "apply_automorphism",
    "conjugates",
]


class _MinusInfinity:
    __slots__ = ()

    def __repr__(self):
        return "MINUS_INFINITY"

    def __str__(self):
        return "-inf"


MINUS_INFINITY = _MinusInfinity()


class OrderData(NamedTuple):
    order: object  # tuple of Fractions, or MINUS_INFINITY
    lm: tuple      # leading exponent (rational vector); () for zero
    lc: CycNum

    def initial_form(self, like: "FracSeries") -> "FracSeries":
        if self.order is MINUS_INFINITY:
            return like.zero()
        return FracSeries.monomial(self.lm, self.lc, order=like.order, cone=like.cone)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _all_rational(terms) -> bool:
    return all(c.is_rational() for c in terms.values())


def _as_number(c: CycNum):
    q = c.coeffs[0]
    return q.numerator if q.denominator == 1 else q


def _cyc(v) -> CycNum:
    return CycNum._make(1, (Fraction(v),))


def _rational_view(weighted):
    """[(w, p, number)] when every coefficient is a plain rational, else None.

    Products of such series run on ints and Fractions directly, which is
    much cheaper than going through CycNum for every term pair.
    """
    out = []
    for w, p, c in weighted:
        if not c.is_rational():
            return None
        out.append((w, p, _as_number(c)))
    return out


def _mul_rational(wa, wb, lim) -> dict:
    acc: dict = {}
    get = acc.get
    for w1, p1, c1 in wa:
        for w2, p2, c2 in wb:
            if lim is not None and w1 + w2 >= lim:
                break
            q = tuple(x + y for x, y in zip(p1, p2))
            acc[q] = get(q, 0) + c1 * c2
    return {p: _cyc(v) for p, v in acc.items() if v}


class FracSeries:
    __slots__ = ("dim", "denom", "terms", "order", "cone", "precision", "_wmin")

    def __init__(self, terms=None, denom: int = 1, *, order: OrderSpec, cone: Cone | None = None,
                 precision=None, check: bool = True):
        e = order.dim
        denom = int(denom)
        if denom < 1:
            raise ValueError("denominator must be positive")
        if precision is not None:
            precision = Fraction(precision)
        clean = {}
        w = order.weight
        for p, c in (terms or {}).items():
            p = tuple(int(x) for x in p)
            c = CycNum.coerce(c)
            if c.is_zero():
                continue
            if len(p) != e:
                raise ValueError(f"exponent {p} has wrong dimension (expected {e})")
            if precision is not None and sum(a * b for a, b in zip(w, p)) >= precision * denom:
                continue
            if check and cone is not None and not cone_contains(cone, p):
                raise ValueError(f"exponent {p}/{denom} lies outside {cone.literal()}")
            clean[p] = c
        self._set(e, denom, clean, order, cone, precision)

    def _set(self, e, denom, terms, order, cone, precision):
        self.dim = e
        self.denom = denom
        self.terms = terms
        self.order = order
        self.cone = cone
        self.precision = precision
        self._wmin = None

    @classmethod
    def _make(cls, denom, terms, order, cone, precision) -> "FracSeries":
        obj = cls.__new__(cls)
        obj._set(order.dim, denom, terms, order, cone, precision)
        return obj

    # -- constructors ---------------------------------------------------------

    @classmethod
    def monomial(cls, exponent, coeff=1, *, order: OrderSpec, cone: Cone | None = None,
                 precision=None) -> "FracSeries":
        """``coeff * x^exponent`` for a rational exponent vector."""
        exponent = [Fraction(x) for x in exponent]
        den = 1
        for x in exponent:
            den = _lcm(den, x.denominator)
        p = tuple(int(x * den) for x in exponent)
        return cls({p: coeff}, den, order=order, cone=cone, precision=precision)

    def zero(self, exact: bool = True) -> "FracSeries":
        return FracSeries._make(1, {}, self.order, self.cone, None if exact else self.precision)

    def constant(self, c) -> "FracSeries":
        c = CycNum.coerce(c)
        terms = {} if c.is_zero() else {(0,) * self.dim: c}
        return FracSeries._make(1, terms, self.order, self.cone, None)

    # -- basic queries --------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.precision is None

    def weight_num(self, p) -> int:
        return sum(a * b for a, b in zip(self.order.weight, p))

    def weight(self, p) -> Fraction:
        """Weighted degree of the term with integer exponent ``p`` (over denom)."""
        return Fraction(self.weight_num(p), self.denom)

    def is_zero(self) -> bool:
        """Exactly zero."""
        return not self.terms and self.precision is None

    def vanishes(self) -> bool:
        """Zero up to the precision bound (no known terms)."""
        return not self.terms

    def min_weight(self):
        """Weight of the lowest term; ``precision`` if none known; None for exact zero."""
        if self._wmin is None:
            if self.terms:
                self._wmin = Fraction(min(self.weight_num(p) for p in self.terms), self.denom)
            else:
                self._wmin = self.precision if self.precision is not None else False
        return self._wmin if self._wmin is not False else None

    def sorted_terms(self):
        key = self.order.key
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]))

    def support(self):
        """Exponents as rational vectors, increasing in the order."""
        n = self.denom
        return [tuple(Fraction(c, n) for c in p) for p, _ in self.sorted_terms()]

    def leading_term(self):
        """(integer exponent over ``denom``, coefficient) of the minimal term."""
        if not self.terms:
            if self.precision is None:
                return None
            raise PrecisionExhausted("series has no known terms below its precision")
        p = min(self.terms, key=self.order.key)
        return p, self.terms[p]

    def coefficient(self, exponent) -> CycNum:
        """Coefficient of ``x^exponent`` (rational vector); must be below precision."""
        exponent = [Fraction(x) for x in exponent]
        if self.precision is not None and self.order.degree(exponent) >= self.precision:
            raise PrecisionExhausted("coefficient requested beyond precision")
        scaled = [x * self.denom for x in exponent]
        if any(x.denominator != 1 for x in scaled):
            return CycNum(0)
        return self.terms.get(tuple(int(x) for x in scaled), CycNum(0))

    def is_integral(self) -> bool:
        """All exponents are integer vectors."""
        n = self.denom
        return all(c % n == 0 for p in self.terms for c in p)

    # -- representation changes ----------------------------------------------

    def with_denom(self, L: int) -> "FracSeries":
        if L == self.denom:
            return self
        if L % self.denom:
            raise ValueError(f"{L} is not a multiple of denominator {self.denom}")
        s = L // self.denom
        terms = {tuple(c * s for c in p): v for p, v in self.terms.items()}
        return FracSeries._make(L, terms, self.order, self.cone, self.precision)

    def reduce_denominator(self) -> "FracSeries":
        g = self.denom
        for p in self.terms:
            for c in p:
                g = gcd(g, c)
                if g == 1:
                    return self
        if g == self.denom and not self.terms:
            g = self.denom
        terms = {tuple(c // g for c in p): v for p, v in self.terms.items()}
        return FracSeries._make(self.denom // g, terms, self.order, self.cone, self.precision)

    def truncated(self, T) -> "FracSeries":
        """Drop terms of weight >= T and lower the precision to at most T."""
        T = Fraction(T)
        if self.precision is not None and self.precision <= T:
            return self
        lim = T * self.denom
        terms = {p: c for p, c in self.terms.items() if self.weight_num(p) < lim}
        return FracSeries._make(self.denom, terms, self.order, self.cone, T)

    def map_exponents(self, matrix, *, cone: Cone | None, order: OrderSpec,
                      source_cone: Cone | None = None) -> "FracSeries":
        """Apply the integer linear map ``p -> matrix . p`` to every exponent.

        The precision bound is transported with the worst ratio of new to old
        weight over the generators of the source cone.
        """
        rows = [tuple(int(x) for x in r) for r in matrix]
        terms = {}
        for p, c in self.terms.items():
            q = tuple(sum(a * b for a, b in zip(r, p)) for r in rows)
            terms[q] = terms[q] + c if q in terms else c
        terms = {p: c for p, c in terms.items() if not c.is_zero()}
        prec = None
        if self.precision is not None:
            src = source_cone or self.cone or orthant(self.dim)
            ratios = []
            for g in src.generators:
                old = sum(a * b for a, b in zip(self.order.weight, g))
                img = [sum(a * b for a, b in zip(r, g)) for r in rows]
                new = sum(a * b for a, b in zip(order.weight, img))
                if new <= 0:
                    raise ValueError("target order is not positive on the image of the source cone")
                ratios.append(Fraction(new, old))
            prec = self.precision * min(ratios)
        out = FracSeries._make(self.denom, terms, order, cone, prec)
        if prec is not None:
            out = FracSeries._make(self.denom, {p: c for p, c in terms.items()
                                                if out.weight_num(p) < prec * self.denom},
                                   order, cone, prec)
        if cone is not None:
            for p in out.terms:
                if not cone_contains(cone, p):
                    raise ValueError(f"mapped exponent {p}/{self.denom} lies outside {cone.literal()}")
        return out

    def rebase(self, cone: Cone | None, order: OrderSpec) -> "FracSeries":
        """Same terms viewed in another cone / order."""
        ident = [[1 if i == j else 0 for j in range(self.dim)] for i in range(self.dim)]
        return self.map_exponents(ident, cone=cone, order=order)

    def map_coefficients(self, fn) -> "FracSeries":
        terms = {}
        for p, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                terms[p] = v
        return FracSeries._make(self.denom, terms, self.order, self.cone, self.precision)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "FracSeries":
        if isinstance(other, FracSeries):
            if other.order != self.order:
                raise ValueError("series use different orders")
            if self.cone is not None and other.cone is not None and other.cone != self.cone:
                raise ValueError("series live in different cones")
            return other
        return self.constant(other)

    def _cone_of(self, other):
        return self.cone if self.cone is not None else other.cone

    def __add__(self, other):
        other = self._coerce(other)
        L = _lcm(self.denom, other.denom)
        a, b = self.with_denom(L), other.with_denom(L)
        if len(b.terms) > 8 and _all_rational(a.terms) and _all_rational(b.terms):
            acc = {p: _as_number(c) for p, c in a.terms.items()}
            for p, c in b.terms.items():
                acc[p] = acc.get(p, 0) + _as_number(c)
            terms = {p: _cyc(v) for p, v in acc.items() if v}
        else:
            terms = dict(a.terms)
            for p, c in b.terms.items():
                if p in terms:
                    s = terms[p] + c
                    if s.is_zero():
                        del terms[p]
                    else:
                        terms[p] = s
                else:
                    terms[p] = c
        prec = _min_prec(a.precision, b.precision)
        if prec is not None:
            lim = math.ceil(prec * L)
            terms = {p: c for p, c in terms.items() if a.weight_num(p) < lim}
        return FracSeries._make(L, terms, self.order, self._cone_of(other), prec)

    __radd__ = __add__

    def __neg__(self):
        return FracSeries._make(self.denom, {p: -c for p, c in self.terms.items()},
                                self.order, self.cone, self.precision)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "FracSeries":
        c = CycNum.coerce(c)
        if c.is_zero():
            return FracSeries._make(1, {}, self.order, self.cone, None)
        return FracSeries._make(self.denom, {p: v * c for p, v in self.terms.items()},
                                self.order, self.cone, self.precision)

    def __mul__(self, other):
        if not isinstance(other, FracSeries):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return FracSeries._make(1, {}, self.order, self._cone_of(other), None)
        va, vb = self.min_weight(), other.min_weight()
        prec = None
        if self.precision is not None:
            prec = self.precision + vb
        if other.precision is not None:
            cand = other.precision + va
            prec = cand if prec is None else min(prec, cand)
        L = _lcm(self.denom, other.denom)
        a, b = self.with_denom(L), other.with_denom(L)
        wa = [(a.weight_num(p), p, c) for p, c in a.terms.items()]
        wb = sorted(((b.weight_num(p), p, c) for p, c in b.terms.items()), key=lambda t: t[0])
        lim = None if prec is None else math.ceil(prec * L)
        ra, rb = _rational_view(wa), _rational_view(wb)
        if ra is not None and rb is not None:
            return FracSeries._make(L, _mul_rational(ra, rb, lim), self.order,
                                    self._cone_of(other), prec)
        terms: dict = {}
        for w1, p1, c1 in wa:
            for w2, p2, c2 in wb:
                if lim is not None and w1 + w2 >= lim:
                    break
                q = tuple(x + y for x, y in zip(p1, p2))
                v = c1 * c2
                if q in terms:
                    terms[q] = terms[q] + v
                else:
                    terms[q] = v
        terms = {p: c for p, c in terms.items() if not c.is_zero()}
        return FracSeries._make(L, terms, self.order, self._cone_of(other), prec)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FracSeries):
            try:
                other = self.constant(other)
            except TypeError:
                return NotImplemented
        if self.order != other.order or self.precision != other.precision:
            return False
        L = _lcm(self.denom, other.denom)
        return self.with_denom(L).terms == other.with_denom(L).terms

    __hash__ = None

    def agrees_with(self, other) -> bool:
        """Equal on the region where both are known."""
        d = self - other
        return d.vanishes()

    def literal(self) -> str:
        """Text form ``series(n=..; (p,...) -> c; ...)`` understood by the parser."""
        items = [f"n={self.denom}"]
        for p, c in self.sorted_terms():
            items.append("(" + ",".join(str(x) for x in p) + ") -> " + str(c))
        if self.precision is not None:
            items.append(f"prec={self.precision}")
        return "series(" + "; ".join(items) + ")"

    def to_expr(self, names=None) -> str:
        """Polynomial-style text, ``2*x1^3*x2 - zeta(4)*x2^(1/2)``."""
        names = names or [f"x{i + 1}" for i in range(self.dim)]
        if not self.terms:
            return "0"
        out = []
        for p, c in self.sorted_terms():
            mono = []
            for name, a in zip(names, p):
                q = Fraction(a, self.denom)
                if q == 0:
                    continue
                if q == 1:
                    mono.append(name)
                elif q.denominator == 1 and q > 0:
                    mono.append(f"{name}^{q}")
                else:
                    mono.append(f"{name}^({q})")
            out.append(_term_text(c, "*".join(mono)))
        return _join_terms(out)

    def __repr__(self):
        tail = "" if self.precision is None else f" + O(w>={self.precision})"
        return f"FracSeries({self.to_expr()}{tail})"


def _term_text(c: CycNum, mono: str):
    """(sign, body) for c*mono."""
    nz = [k for k, v in enumerate(c.coeffs) if v]
    if len(nz) == 1:
        sign = "-" if c.coeffs[nz[0]] < 0 else "+"
        body = format_cyc(-c if sign == "-" else c)
        if not mono:
            return sign, body
        return sign, mono if body == "1" else f"{body}*{mono}"
    text = format_cyc(c)
    if not mono:
        return "+", f"({text})"
    return "+", f"({text})*{mono}"


def _join_terms(parts) -> str:
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- module-level operations ------------------------------------------------


def order_data(z: FracSeries) -> OrderData:
    """Order (minimal support element), leading monomial exponent and coefficient.

    ``O(0) = MINUS_INFINITY``; a truncated series without known terms raises
    :class:`PrecisionExhausted`.
    """
    if not z.terms:
        if z.precision is None:
            return OrderData(MINUS_INFINITY, (), CycNum(0))
        raise PrecisionExhausted("no terms below precision: cannot tell 0 from O(>= T)")
    p, c = z.leading_term()
    vec = tuple(Fraction(x, z.denom) for x in p)
    return OrderData(vec, vec, c)


def series_arith(op: str, a: FracSeries, b: FracSeries) -> FracSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def truncate_below(y: FracSeries, m) -> FracSeries:
    """``y_{<m}``: the exact sum of the terms with exponent < m."""
    m = tuple(Fraction(x) for x in m)
    if y.precision is not None and y.order.degree(m) >= y.precision:
        raise PrecisionExhausted("truncation point is not below the precision bound")
    n = y.denom
    terms = {p: c for p, c in y.terms.items()
             if compare(y.order, tuple(Fraction(x, n) for x in p), m) is Ordering.LT}
    return FracSeries._make(n, terms, y.order, y.cone, None)


def _index_image(y: FracSeries, k, n: int) -> FracSeries:
    """Image under x_i^(1/n) -> zeta_n^(k_i) x_i^(1/n); y has denominator n."""
    terms = {}
    for p, c in y.terms.items():
        s = sum(a * b for a, b in zip(k, p)) % n
        terms[p] = c if s == 0 else c * root_of_unity(s, n)
    return FracSeries._make(n, terms, y.order, y.cone, y.precision)


def apply_automorphism(y: FracSeries, omega) -> FracSeries:
    """Apply x_i^(1/n) -> omega_i x_i^(1/n) (n = y.denom); the support is unchanged."""
    omega = [CycNum.coerce(w) for w in omega]
    if len(omega) != y.dim:
        raise ValueError("need one root of unity per variable")
    n = y.denom
    for w in omega:
        if not (w ** n) == 1:
            raise ValueError(f"{w} is not an n-th root of unity (n={n})")
    terms = {}
    for p, c in y.terms.items():
        f = CycNum(1)
        for w, a in zip(omega, p):
            if a % n:
                f = f * w ** (a % n)
        terms[p] = c * f
    return FracSeries._make(n, terms, y.order, y.cone, y.precision)


def automorphism_indices(n: int, e: int):
    """All k in [0, n)^e, i.e. all elements of Aut(L_n / L) as index vectors."""
    return itertools.product(range(n), repeat=e)


def _signature(y: FracSeries, k, n: int):
    return tuple(sum(a * b for a, b in zip(k, p)) % n for p in y.terms)


def conjugates(y: FracSeries, n: int, *, expected: int | None = None,
               strict: bool = True) -> list[FracSeries]:
    """Distinct images of ``y`` under all n^e automorphisms, ``y`` first.

    For a truncated ``y`` two images that agree on every known term are only
    identified when the count is certified: either ``expected`` distinct
    images were found (y is then known to have exactly that many
    conjugates) or ``strict`` is False (count "to precision").
    """
    if n % y.denom:
        raise ValueError(f"denominator {y.denom} does not divide {n}")
    y = y.with_denom(n)
    seen = {}
    out = []
    for k in automorphism_indices(n, y.dim):
        sig = _signature(y, k, n)
        if sig in seen:
            continue
        seen[sig] = k
        out.append(_index_image(y, k, n))
    if y.precision is not None and strict:
        if expected is None or len(out) != expected:
            # some image may still differ beyond the truncation
            total = n ** y.dim
            if len(out) != total:
                raise PrecisionExhausted(
                    f"{len(out)} distinct images to precision {y.precision}; "
                    "equality of the remaining images is undecided")
    return out
