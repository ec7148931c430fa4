"""Characteristic exponents, gcd sequences, orbit counts, orders of pairs,
pseudo-roots and the semigroup of values of a free polynomial.

Exponent vectors are integer vectors read over the common denominator
``n`` (the degree), so ``m = (3,)`` with ``n = 2`` stands for ``x^(3/2)``.
Orders of pairs ``O(f, g) = n * O(g(y))`` are integer vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .cones import Cone, OrderSpec, cone_contains
from .exceptions import (
    CountMismatch,
    CrossCheckMismatch,
    DegenerateCharacteristicData,
    DividesF,
    InvariantViolation,
    NotRepresentable,
    PrecisionExhausted,
)
from .lattice import lattice_gcd, lattice_membership
from .series import FracSeries, MINUS_INFINITY, conjugates, order_data, truncate_below
from .ypoly import (
    G_adic_expansion,
    SeriesPoly,
    approximate_root,
    eval_at,
    minimal_polynomial,
    resultant_order,
)

__all__ = [
    "CharData",
    "SequencePack",
    "SemigroupDesc",
    "GaloisCounts",
    "Representation",
    "characteristic_data",
    "gcd_sequences",
    "lattice_membership",
    "galois_counts",
    "order_pair",
    "pseudo_root",
    "semigroup_generators",
    "semigroup_representation",
    "expansion_order",
]


def _vec(v):
    """Normalise a rational vector: ints where integral."""
    out = []
    for x in v:
        x = Fraction(x)
        out.append(int(x) if x.denominator == 1 else x)
    return tuple(out)


@dataclass(frozen=True)
class CharData:
    n: int
    e: int
    m: tuple
    order: OrderSpec

    @property
    def h(self) -> int:
        return len(self.m)

    def exponents(self):
        """Characteristic exponents as rational vectors."""
        return [tuple(Fraction(c, self.n) for c in mi) for mi in self.m]

    def monomials(self, names=None):
        names = names or [f"x{i + 1}" for i in range(self.e)]
        out = []
        for vec in self.exponents():
            parts = []
            for name, q in zip(names, vec):
                if q == 0:
                    continue
                parts.append(name if q == 1 else f"{name}^({q})")
            out.append("*".join(parts) or "1")
        return out


@dataclass(frozen=True)
class SequencePack:
    n: int
    e: int
    D: tuple
    d: tuple
    e_seq: tuple
    r: tuple  # r_0^1..r_0^e followed by r_1..r_h

    @property
    def h(self) -> int:
        return len(self.e_seq)

    @property
    def r0(self):
        return self.r[: self.e]

    @property
    def rh(self):
        return self.r[self.e:]


@dataclass(frozen=True)
class SemigroupDesc:
    n: int
    e: int
    generators: tuple
    e_seq: tuple
    cone: Cone | None = None

    @property
    def rh(self):
        return self.generators[self.e:]


class GaloisCounts(NamedTuple):
    R: tuple
    S: tuple
    R_tilde: tuple
    S_tilde: tuple


class Representation(NamedTuple):
    alpha0: tuple
    alpha: tuple


# -- characteristic exponents ------------------------------------------------


def _sorted_vectors(vectors, order: OrderSpec):
    return sorted(set(vectors), key=order.key)


def _conjugates_checked(y: FracSeries, n: int):
    conj = conjugates(y, n, strict=False)
    if y.precision is not None and len(conj) != n:
        raise PrecisionExhausted(
            f"{len(conj)} conjugates distinguishable to precision {y.precision}, expected {n}")
    return conj


def _method_differences(y: FracSeries, n: int, conj):
    orders = []
    for yk in conj[1:]:
        diff = yk - y
        if diff.vanishes():
            continue
        od = order_data(diff)
        orders.append(tuple(int(c * n) for c in od.order))
    return _sorted_vectors(orders, y.order)


def _method_lattice(y: FracSeries, n: int):
    e = y.dim
    ms: list = []
    D = n ** e
    for p, _ in y.sorted_terms():
        Dt = lattice_gcd(n, e, ms + [p])
        if Dt != D:
            ms.append(tuple(p))
            D = Dt
    return ms


def characteristic_data(y: FracSeries, n: int) -> CharData:
    """Characteristic exponents of a root ``y`` of a free polynomial of degree ``n``.

    Computed as the orders of ``theta(y) - y`` over all automorphisms and,
    independently, by walking the support and recording each exponent that
    leaves the current lattice.  The two results must agree.
    """
    if n % y.denom:
        raise ValueError(f"denominator {y.denom} does not divide n={n}")
    y = y.with_denom(n)
    conj = _conjugates_checked(y, n)
    by_diff = _method_differences(y, n, conj)
    by_lattice = _method_lattice(y, n)
    if [tuple(v) for v in by_diff] != [tuple(v) for v in by_lattice]:
        raise CrossCheckMismatch(
            f"conjugate differences give {by_diff}, support walk gives {by_lattice}")
    return CharData(n, y.dim, tuple(tuple(v) for v in by_diff), y.order)


def gcd_sequences(n: int, e: int, m) -> SequencePack:
    ms = [tuple(int(c) for c in v) for v in (m.m if isinstance(m, CharData) else m)]
    h = len(ms)
    D = [lattice_gcd(n, e, ms[:i]) for i in range(h + 1)]
    for i in range(h):
        if D[i + 1] >= D[i]:
            raise DegenerateCharacteristicData(
                f"m_{i + 1} = {ms[i]} lies in the lattice of its predecessors")
    if D[h] != n ** (e - 1):
        raise DegenerateCharacteristicData(
            f"D_(h+1) = {D[h]} differs from n^(e-1) = {n ** (e - 1)}")
    last = D[h]
    d = tuple(Di // last for Di in D)
    e_seq = tuple(D[i] // D[i + 1] for i in range(h))
    r = [tuple(n if i == j else 0 for i in range(e)) for j in range(e)]
    prev = None
    for i in range(h):
        if i == 0:
            cur = ms[0]
        else:
            cur = tuple(e_seq[i - 1] * a + b - c for a, b, c in zip(prev, ms[i], ms[i - 1]))
        r.append(cur)
        prev = cur
    return SequencePack(n, e, tuple(D), d, e_seq, tuple(r))


def galois_counts(y: FracSeries, n: int, data: CharData, seq: SequencePack | None = None) -> GaloisCounts:
    """Brute-force orbit counts, checked against the D and d sequences."""
    y = y.with_denom(n)
    key = y.order.key
    support = [p for p, _ in y.sorted_terms()]

    theta_orders = []
    for k in itertools.product(range(n), repeat=y.dim):
        first = None
        for p in support:
            if sum(a * b for a, b in zip(k, p)) % n:
                first = p
                break
        theta_orders.append(first)
    conj = _conjugates_checked(y, n)
    conj_orders = []
    for yk in conj:
        diff = yk - y
        if diff.vanishes():
            conj_orders.append(None)
        else:
            conj_orders.append(tuple(int(c * n) for c in order_data(diff).order))

    def count(orders, mi, strict):
        kk = key(mi)
        if strict:
            return sum(1 for o in orders if o is not None and key(o) == kk)
        return sum(1 for o in orders if o is None or key(o) >= kk)

    R = tuple(count(theta_orders, mi, False) for mi in data.m)
    S = tuple(count(theta_orders, mi, True) for mi in data.m)
    Rt = tuple(count(conj_orders, mi, False) for mi in data.m)
    St = tuple(count(conj_orders, mi, True) for mi in data.m)
    seq = seq or gcd_sequences(n, y.dim, data)
    h = data.h
    want = GaloisCounts(
        tuple(seq.D[:h]),
        tuple(seq.D[i] - seq.D[i + 1] for i in range(h)),
        tuple(seq.d[:h]),
        tuple(seq.d[i] - seq.d[i + 1] for i in range(h)),
    )
    got = GaloisCounts(R, S, Rt, St)
    if got != want:
        raise CountMismatch(f"orbit counts {got} differ from sequence values {want}")
    return got


# -- orders of pairs ---------------------------------------------------------


def order_of(z: FracSeries):
    od = order_data(z)
    return od.order


def order_pair(f: SeriesPoly, y: FracSeries, g, *, n: int | None = None,
               cross_check: bool = True):
    """``O(f, g) = n * O(g(x, y))`` for a root y of f; cross-checked with O(Res_y(f, g))."""
    n = n or f.degree
    if not isinstance(g, SeriesPoly):
        g = f._coerce(g)
    val = eval_at(g, y)
    if val.vanishes():
        if val.is_zero():
            raise DividesF("g vanishes on the root of f")
        res = resultant_order(f, g)
        if res is MINUS_INFINITY:
            raise DividesF("g vanishes on the root of f")
        raise PrecisionExhausted("g(x, y) vanishes to the precision of the root")
    od = order_data(val)
    out = _vec(n * c for c in od.order)
    if cross_check:
        # the substitution value only sets where truncation starts; the
        # resultant is still computed on its own
        res = resultant_order(f, g, start=f.order.degree(out) + 1)
        if res is MINUS_INFINITY or _vec(res) != out:
            raise CrossCheckMismatch(f"substitution gives {out}, resultant gives {res}")
    return out


def pseudo_root(y: FracSeries, n: int, data: CharData, i: int) -> SeriesPoly:
    """G_i: minimal polynomial of the truncation of y below m_i (1-based i)."""
    if not 1 <= i <= data.h:
        raise ValueError(f"pseudo-root index {i} outside 1..{data.h}")
    trunc = truncate_below(y, [Fraction(c, n) for c in data.m[i - 1]])
    return minimal_polynomial(trunc, n)


def truncated_root(y: FracSeries, n: int, data: CharData, i: int) -> FracSeries:
    return truncate_below(y, [Fraction(c, n) for c in data.m[i - 1]])


def semigroup_generators(f: SeriesPoly, y: FracSeries, *, n: int | None = None,
                         data: CharData | None = None, seq: SequencePack | None = None,
                         cone: Cone | None = None) -> SemigroupDesc:
    """Generators (r_0^1..r_0^e, r_1..r_h) after checking the orders they must realise."""
    n = n or f.degree
    data = data or characteristic_data(y, n)
    seq = seq or gcd_sequences(n, y.dim, data)
    G = [pseudo_root(y, n, data, i) for i in range(1, data.h + 1)]
    for i, Gi in enumerate(G, start=1):
        ri = tuple(seq.rh[i - 1])
        got = order_pair(f, y, Gi, n=n)
        if got != ri:
            raise InvariantViolation(f"O(f, G_{i}) = {got}, expected r_{i} = {ri}")
        app = approximate_root(f, seq.d[i - 1])
        got = order_pair(f, y, app, n=n)
        if got != ri:
            raise InvariantViolation(f"O(f, App(f, d_{i})) = {got}, expected {ri}")
    for i in range(1, data.h + 1):
        yi = truncated_root(y, n, data, i)
        ni = n // seq.d[i - 1]
        for j in range(1, i):
            got = order_pair(G[i - 1], yi, G[j - 1], n=ni, cross_check=False)
            want = _vec(Fraction(c, seq.d[i - 1]) for c in seq.rh[j - 1])
            if got != want:
                raise InvariantViolation(f"O(G_{i}, G_{j}) = {got}, expected r_{j}/d_{i} = {want}")
    return SemigroupDesc(n, y.dim, tuple(tuple(v) for v in seq.r), seq.e_seq, cone)


def semigroup_representation(s: SemigroupDesc, a) -> Representation:
    """a = sum alpha0_j r_0^j + sum alpha_j r_j with 0 <= alpha_j < e_j."""
    a = tuple(int(x) for x in a)
    if len(a) != s.e:
        raise ValueError("dimension mismatch")
    rh = s.rh
    alpha = [0] * len(rh)
    cur = a
    for j in range(len(rh) - 1, -1, -1):
        prefix = rh[:j]
        for k in range(s.e_seq[j]):
            cand = tuple(x - k * y for x, y in zip(cur, rh[j]))
            if lattice_membership(s.n, prefix, cand)[0]:
                alpha[j] = k
                cur = cand
                break
        else:
            raise NotRepresentable(f"{a} is not in the lattice generated by the semigroup")
    if any(x % s.n for x in cur):
        raise NotRepresentable(f"remainder {cur} is not in (nZ)^e")
    alpha0 = tuple(x // s.n for x in cur)
    cone_ok = cone_contains(s.cone, alpha0) if s.cone is not None else all(x >= 0 for x in alpha0)
    if not cone_ok:
        raise NotRepresentable(f"{a} has lattice coordinates {alpha0} outside the cone")
    return Representation(alpha0, tuple(alpha))


def expansion_order(f: SeriesPoly, G, seq: SequencePack, g: SeriesPoly, *, n: int | None = None):
    """O(f, g) from the (G_1..G_h, f)-adic expansion of g: the unique minimal monomial value.

    Returns ``(order, b)`` with ``b`` the winning exponent tuple.
    """
    n = n or f.degree
    family = list(G) + [f]
    exp = G_adic_expansion(g, family, seq.e_seq)
    values = {}
    for b, c in exp.items():
        if b[-1] > 0:
            continue  # contains a power of f: infinite order
        if c.vanishes():
            if c.is_zero():
                continue
            raise PrecisionExhausted("G-adic coefficient vanishes to precision")
        oc = order_data(c).order
        val = tuple(n * x for x in oc)
        for bj, rj in zip(b, seq.rh):
            val = tuple(v + bj * r for v, r in zip(val, rj))
        values[b] = _vec(val)
    if not values:
        raise DividesF("g is a multiple of f")
    keyed = sorted(values.items(), key=lambda kv: f.order.key(kv[1]))
    if len({v for v in values.values()}) != len(values):
        raise InvariantViolation("two G-adic monomials share the same order")
    b, val = keyed[0]
    return val, b
