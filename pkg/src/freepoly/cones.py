"""Finitely generated rational cones and additive orders compatible with them.

All decisions are exact: membership and the line-free test go through
Fourier-Motzkin elimination over the rationals.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd

from .exceptions import NotLineFree

__all__ = [
    "Cone",
    "OrderSpec",
    "Ordering",
    "is_line_free",
    "compatible_order",
    "compare",
    "cone_contains",
    "standard_blowup_cone",
    "orthant",
]


def _primitive(vec) -> tuple[int, ...]:
    vec = [Fraction(c) for c in vec]
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in vec), 1)
    ints = [int(c * den) for c in vec]
    g = reduce(gcd, (abs(c) for c in ints), 0)
    return tuple(c // g for c in ints) if g else tuple(ints)


# -- Fourier-Motzkin ---------------------------------------------------------
# A row is (coeffs, rhs) and means coeffs . z >= rhs (inequality) or == rhs.


def _norm_ineq(coeffs, rhs):
    vals = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in vals), 1)
    ints = [int(c * den) for c in vals]
    g = reduce(gcd, (abs(c) for c in ints), 0) or 1
    ints = [c // g for c in ints]
    return tuple(ints[:-1]), ints[-1]


def _norm_eq(coeffs, rhs):
    c, r = _norm_ineq(coeffs, rhs)
    for x in c:
        if x:
            if x < 0:
                c, r = tuple(-y for y in c), -r
            break
    return c, r


def _eliminate(eqs, ineqs, k):
    pivot = next((row for row in eqs if row[0][k]), None)
    if pivot is not None:
        pc, pr = pivot
        a = pc[k]

        def sub(row):
            c, r = row
            f = Fraction(c[k], a)
            return [x - f * y for x, y in zip(c, pc)], r - f * pr

        new_eqs = {_norm_eq(*sub(row)) for row in eqs if row is not pivot}
        new_ineqs = {_norm_ineq(*sub(row)) for row in ineqs}
        return new_eqs, new_ineqs
    pos = [row for row in ineqs if row[0][k] > 0]
    neg = [row for row in ineqs if row[0][k] < 0]
    out = {row for row in ineqs if row[0][k] == 0}
    for (pc, pr), (nc, nr) in itertools.product(pos, neg):
        a, b = pc[k], -nc[k]
        c = [b * x + a * y for x, y in zip(pc, nc)]
        out.add(_norm_ineq(c, b * pr + a * nr))
    return set(eqs), out


def _trivially_infeasible(eqs, ineqs) -> bool:
    for c, r in eqs:
        if not any(c) and r != 0:
            return True
    for c, r in ineqs:
        if not any(c) and r > 0:
            return True
    return False


def _drop_trivial(eqs, ineqs):
    eqs = {row for row in eqs if any(row[0])}
    ineqs = {row for row in ineqs if any(row[0])}
    return eqs, ineqs


def _fm_point(eqs, ineqs, nvars):
    """A rational solution of the system, or None if infeasible."""
    history = []
    eqs, ineqs = set(eqs), set(ineqs)
    for k in range(nvars):
        history.append((eqs, ineqs))
        eqs, ineqs = _eliminate(eqs, ineqs, k)
        if _trivially_infeasible(eqs, ineqs):
            return None
        eqs, ineqs = _drop_trivial(eqs, ineqs)
    values = [Fraction(0)] * nvars
    for k in range(nvars - 1, -1, -1):
        eqs_k, ineqs_k = history[k]
        lo, hi, fixed = None, None, None
        for c, r in eqs_k:
            if c[k]:
                rest = sum(Fraction(c[j]) * values[j] for j in range(k + 1, nvars))
                fixed = (r - rest) / c[k]
                break
        if fixed is None:
            for c, r in ineqs_k:
                if not c[k]:
                    continue
                rest = sum(Fraction(c[j]) * values[j] for j in range(k + 1, nvars))
                bound = (r - rest) / c[k]
                if c[k] > 0:
                    lo = bound if lo is None else max(lo, bound)
                else:
                    hi = bound if hi is None else min(hi, bound)
            if lo is None and hi is None:
                fixed = Fraction(0)
            elif lo is None:
                fixed = Fraction(min(0, int(hi // 1)))
            elif hi is None:
                fixed = Fraction(max(0, -((-lo) // 1)))
            else:
                up = -((-lo) // 1)
                fixed = Fraction(up) if up <= hi else lo
        values[k] = fixed
    return values


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class Cone:
    """Cone generated by finitely many nonzero integer vectors."""

    generators: tuple
    dim: int = field(default=0)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            p = _primitive(g)
            if not any(p):
                raise ValueError("cone generators must be nonzero")
            if p not in gens:
                gens.append(p)
        dims = {len(g) for g in gens}
        dim = self.dim or (dims.pop() if len(dims) == 1 else 0)
        if not gens or dim < 1 or any(len(g) != dim for g in gens):
            raise ValueError("generators must be nonempty vectors of one common dimension")
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "dim", dim)

    @cached_property
    def _hrep(self):
        # project {(lam, v) : G lam = v, lam >= 0} onto v
        k, e = len(self.generators), self.dim
        nv = k + e
        eqs = set()
        for i in range(e):
            c = [0] * nv
            for j, g in enumerate(self.generators):
                c[j] = g[i]
            c[k + i] = -1
            eqs.add(_norm_eq(c, 0))
        ineqs = set()
        for j in range(k):
            c = [0] * nv
            c[j] = 1
            ineqs.add(_norm_ineq(c, 0))
        for j in range(k):
            eqs, ineqs = _eliminate(eqs, ineqs, j)
            eqs, ineqs = _drop_trivial(eqs, ineqs)
        eq_rows = tuple(sorted(c[k:] for c, _ in eqs))
        in_rows = tuple(sorted(c[k:] for c, _ in ineqs))
        return eq_rows, in_rows

    @property
    def inequalities(self):
        """Rows a with a . v >= 0 on the cone (an H-description)."""
        return self._hrep[1]

    @property
    def equations(self):
        return self._hrep[0]

    def __contains__(self, v) -> bool:
        return cone_contains(self, v)

    def literal(self) -> str:
        body = ", ".join("(" + ",".join(str(c) for c in g) + ")" for g in self.generators)
        return "cone{ " + body + " }"


@dataclass(frozen=True)
class OrderSpec:
    """Compare by ``weight . v`` first, then lexicographically (coordinate 1 first)."""

    weight: tuple
    tiebreak: str = "lex"

    def __post_init__(self):
        object.__setattr__(self, "weight", tuple(int(w) for w in self.weight))
        if self.tiebreak != "lex":
            raise ValueError("only the lexicographic tiebreak is supported")

    @property
    def dim(self) -> int:
        return len(self.weight)

    def degree(self, v) -> Fraction:
        return sum((w * Fraction(c) for w, c in zip(self.weight, v)), Fraction(0))

    def key(self, v):
        """Sort key realising the order on vectors of a fixed denominator."""
        return (sum(w * c for w, c in zip(self.weight, v)), tuple(v))

    def compare(self, a, b) -> Ordering:
        return compare(self, a, b)

    def to_json(self) -> dict:
        return {"weight": list(self.weight), "tiebreak": self.tiebreak}


def compare(o: OrderSpec, a, b) -> Ordering:
    da, db = o.degree(a), o.degree(b)
    if da != db:
        return Ordering.LT if da < db else Ordering.GT
    for x, y in zip(a, b):
        x, y = Fraction(x), Fraction(y)
        if x != y:
            return Ordering.LT if x < y else Ordering.GT
    return Ordering.EQ


def _separating_weight(c: Cone):
    e = c.dim
    ineqs = {_norm_ineq(g, 1) for g in c.generators}
    return _fm_point(set(), ineqs, e)


def is_line_free(c: Cone) -> bool:
    """True iff the cone contains no line (exists w with w.g > 0 on all generators)."""
    return _separating_weight(c) is not None


def _norm_candidates(k: int, e: int):
    cands = [v for v in itertools.product(range(-k, k + 1), repeat=e)
             if max(abs(x) for x in v) == k]
    cands.sort(key=lambda v: (sum(abs(x) for x in v), v))
    return cands


_ENUMERATION_LIMIT = 200_000


def compatible_order(c: Cone) -> OrderSpec:
    """Smallest (max-norm, then |.|_1, then lex) integer weight positive on the cone."""
    w = _separating_weight(c)
    if w is None:
        raise NotLineFree(f"{c.literal()} contains a line")
    bound_vec = _primitive(w)
    bound = max(abs(x) for x in bound_vec)
    gens = c.generators
    for k in range(1, bound + 1):
        if (2 * k + 1) ** c.dim > _ENUMERATION_LIMIT:
            break
        for v in _norm_candidates(k, c.dim):
            if all(sum(a * b for a, b in zip(v, g)) > 0 for g in gens):
                return OrderSpec(v)
    return OrderSpec(bound_vec)


def cone_contains(c: Cone, v) -> bool:
    v = [Fraction(x) for x in v]
    if len(v) != c.dim:
        raise ValueError("dimension mismatch")
    for row in c.equations:
        if sum(a * x for a, x in zip(row, v)) != 0:
            return False
    for row in c.inequalities:
        if sum(a * x for a, x in zip(row, v)) < 0:
            return False
    return True


def standard_blowup_cone(e: int) -> Cone:
    """{c : c1 >= -(c2+...+ce), ci >= 0 for i >= 2}."""
    if e < 1:
        raise ValueError("e must be >= 1")
    gens = [tuple(1 if j == 0 else 0 for j in range(e))]
    for i in range(1, e):
        gens.append(tuple(-1 if j == 0 else (1 if j == i else 0) for j in range(e)))
    return Cone(tuple(gens))


def orthant(e: int) -> Cone:
    return Cone(tuple(tuple(1 if j == i else 0 for j in range(e)) for i in range(e)))
