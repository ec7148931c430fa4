"""Polynomials in y whose coefficients are :class:`FracSeries`.

Besides ring arithmetic this module provides evaluation, Sylvester
resultants (division-free Berkowitz determinant), g-adic and G-adic
expansions, the Tschirnhausen operator, approximate roots and minimal
polynomials built as products over conjugates.
"""

from __future__ import annotations

from fractions import Fraction

from .cones import Cone, OrderSpec
from .cyclotomic import CycNum
from .exceptions import InvariantViolation, NoConvergence, NotGaloisStable, PrecisionExhausted
from .series import FracSeries, MINUS_INFINITY, _join_terms, _term_text, conjugates, order_data

__all__ = [
    "SeriesPoly",
    "eval_at",
    "resultant_y",
    "resultant_order",
    "discriminant_y",
    "g_adic_expansion",
    "tschirnhausen",
    "approximate_root",
    "G_adic_expansion",
    "minimal_polynomial",
]


class SeriesPoly:
    """``sum coeffs[k] * y^k``; coefficients are listed from degree 0 upwards."""

    __slots__ = ("coeffs", "order", "cone")

    def __init__(self, coeffs, *, order: OrderSpec, cone: Cone | None = None):
        out = []
        for c in coeffs:
            if not isinstance(c, FracSeries):
                c = FracSeries({(0,) * order.dim: c}, order=order, cone=cone)
            elif c.order != order:
                raise ValueError("coefficient uses a different order")
            out.append(c)
        while out and out[-1].is_zero():
            out.pop()
        self.coeffs = tuple(out)
        self.order = order
        self.cone = cone

    @classmethod
    def _raw(cls, coeffs, order, cone):
        obj = cls.__new__(cls)
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        obj.coeffs = tuple(coeffs)
        obj.order = order
        obj.cone = cone
        return obj

    @classmethod
    def gen(cls, order: OrderSpec, cone: Cone | None = None) -> "SeriesPoly":
        """The polynomial ``y``."""
        return cls([0, 1], order=order, cone=cone)

    @classmethod
    def from_series(cls, c: FracSeries) -> "SeriesPoly":
        return cls._raw([c], c.order, c.cone)

    # -- queries --------------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.order.dim

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def coefficient(self, k: int) -> FracSeries:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self._zero()

    @property
    def lc(self) -> FracSeries:
        return self.coeffs[-1] if self.coeffs else self._zero()

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return all(c.exact for c in self.coeffs)

    @property
    def precision(self):
        """Smallest coefficient precision, None when every coefficient is exact."""
        ps = [c.precision for c in self.coeffs if c.precision is not None]
        return min(ps) if ps else None

    def vanishes(self) -> bool:
        return all(c.vanishes() for c in self.coeffs)

    def _zero(self) -> FracSeries:
        return FracSeries._make(1, {}, self.order, self.cone, None)

    def _one(self) -> FracSeries:
        return FracSeries._make(1, {(0,) * self.dim: CycNum(1)}, self.order, self.cone, None)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "SeriesPoly":
        if isinstance(other, SeriesPoly):
            if other.order != self.order:
                raise ValueError("polynomials use different orders")
            return other
        if isinstance(other, FracSeries):
            return SeriesPoly.from_series(other)
        return SeriesPoly([other], order=self.order, cone=self.cone)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SeriesPoly._raw([self.coefficient(k) + other.coefficient(k) for k in range(n)],
                               self.order, self.cone or other.cone)

    __radd__ = __add__

    def __neg__(self):
        return SeriesPoly._raw([-c for c in self.coeffs], self.order, self.cone)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (FracSeries, int, Fraction, CycNum)):
            if not isinstance(other, FracSeries):
                other = self._one().scale(other)
            return SeriesPoly._raw([c * other for c in self.coeffs], self.order, self.cone)
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return SeriesPoly._raw([], self.order, self.cone)
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                t = a * b
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = self._zero()
        return SeriesPoly._raw([c if c is not None else zero for c in out],
                               self.order, self.cone or other.cone)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = SeriesPoly._raw([self._one()], self.order, self.cone)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "SeriesPoly":
        return SeriesPoly._raw([x.scale(c) for x in self.coeffs], self.order, self.cone)

    def divmod(self, g: "SeriesPoly"):
        """Euclidean division by a monic ``g``; no series division needed."""
        g = self._coerce(g)
        if not g.is_monic():
            raise ValueError("divisor must be monic")
        dg = g.degree
        rem = list(self.coeffs)
        if len(rem) - 1 < dg:
            return SeriesPoly._raw([], self.order, self.cone), self
        quot = [None] * (len(rem) - dg)
        for k in range(len(rem) - 1, dg - 1, -1):
            c = rem[k]
            quot[k - dg] = c
            if c.is_zero():
                continue
            for j in range(dg):
                if not g.coeffs[j].is_zero():
                    rem[k - dg + j] = rem[k - dg + j] - c * g.coeffs[j]
            rem[k] = self._zero()
        return (SeriesPoly._raw(quot, self.order, self.cone),
                SeriesPoly._raw(rem[:dg], self.order, self.cone))

    def __floordiv__(self, g):
        return self.divmod(g)[0]

    def __mod__(self, g):
        return self.divmod(g)[1]

    def derivative(self) -> "SeriesPoly":
        return SeriesPoly._raw([c.scale(k) for k, c in enumerate(self.coeffs) if k],
                               self.order, self.cone)

    def __call__(self, z):
        return eval_at(self, z)

    # -- representation changes ----------------------------------------------

    def map_coefficients(self, fn, *, order: OrderSpec | None = None,
                         cone: Cone | None = None) -> "SeriesPoly":
        new = [fn(c) for c in self.coeffs]
        return SeriesPoly._raw(new, order or self.order, cone if cone is not None else self.cone)

    def map_exponents(self, matrix, *, cone: Cone | None, order: OrderSpec,
                      source_cone: Cone | None = None) -> "SeriesPoly":
        return SeriesPoly._raw(
            [c.map_exponents(matrix, cone=cone, order=order, source_cone=source_cone)
             for c in self.coeffs], order, cone)

    def truncated(self, T) -> "SeriesPoly":
        return SeriesPoly._raw([c.truncated(T) for c in self.coeffs], self.order, self.cone)

    def reduce_denominators(self) -> "SeriesPoly":
        return SeriesPoly._raw([c.reduce_denominator() for c in self.coeffs], self.order, self.cone)

    def integral(self) -> bool:
        return all(c.is_integral() for c in self.coeffs)

    def max_weight(self) -> Fraction:
        """Largest weighted degree of a stored term (0 for constants)."""
        best = Fraction(0)
        for c in self.coeffs:
            for p in c.terms:
                best = max(best, c.weight(p))
        return best

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def agrees_with(self, other) -> bool:
        """Coefficientwise equality on the region where both are known."""
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coefficient(k).agrees_with(other.coefficient(k)) for k in range(n))

    def to_expr(self, names=None) -> str:
        names = list(names or [f"x{i + 1}" for i in range(self.dim)])
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            ymono = "" if k == 0 else ("y" if k == 1 else f"y^{k}")
            for p, v in c.sorted_terms():
                xs = []
                for name, a in zip(names, p):
                    q = Fraction(a, c.denom)
                    if q == 0:
                        continue
                    if q == 1:
                        xs.append(name)
                    elif q.denominator == 1 and q > 0:
                        xs.append(f"{name}^{q}")
                    else:
                        xs.append(f"{name}^({q})")
                mono = "*".join(xs + ([ymono] if ymono else []))
                parts.append(_term_text(v, mono))
        text = _join_terms(parts)
        prec = self.precision
        if prec is not None:
            text += f"  [+ O(weight >= {prec})]"
        return text

    def __str__(self):
        return self.to_expr()

    def __repr__(self):
        return f"SeriesPoly({self.to_expr()})"


# -- evaluation / resultants -----------------------------------------------


def eval_at(f: SeriesPoly, z: FracSeries) -> FracSeries:
    """``f(x, z(x))`` by Horner's rule; precision follows the series rules."""
    if not isinstance(z, FracSeries):
        z = f._one().scale(z)
    if f.is_zero():
        return f._zero()
    acc = f.coeffs[-1]
    for c in reversed(f.coeffs[:-1]):
        acc = acc * z + c
    return acc


def _sylvester(f: SeriesPoly, g: SeriesPoly):
    n, m = f.degree, g.degree
    zero = f._zero()
    N = n + m
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([zero] * i + fc + [zero] * (N - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + gc + [zero] * (N - m - 1 - i))
    return rows


def _berkowitz_det(A, one, zero):
    """Determinant via the division-free Samuelson-Berkowitz recursion."""
    N = len(A)
    if N == 0:
        return one
    vect = [one, -A[0][0]]
    for r in range(1, N):
        C = [A[i][r] for i in range(r)]
        R = [A[r][j] for j in range(r)]
        col = [one, -A[r][r]]
        v = C
        for k in range(r):
            col.append(-_dot(R, v, zero))
            if k < r - 1:
                v = [_dot(A[i][:r], v, zero) for i in range(r)]
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                a, b = col[i - j], vect[j]
                if a.is_zero() or b.is_zero():
                    continue
                s = s + a * b
            new.append(s)
        vect = new
    det = vect[N]
    return det if N % 2 == 0 else -det


def _dot(row, vec, zero):
    s = zero
    for a, b in zip(row, vec):
        if a.is_zero() or b.is_zero():
            continue
        s = s + a * b
    return s


def resultant_y(f: SeriesPoly, g: SeriesPoly, precision=None) -> FracSeries:
    """Sylvester resultant ``Res_y(f, g)``; entries truncated at ``precision`` if given."""
    g = f._coerce(g)
    if f.is_zero() or g.is_zero():
        return f._zero()
    A = _sylvester(f, g)
    if precision is not None:
        A = [[c.truncated(precision) for c in row] for row in A]
    if f.is_monic():
        A = _eliminate_unit_block(A, g.degree)
    return _berkowitz_det(A, f._one(), f._zero())


def _eliminate_unit_block(A, m):
    """Clear the g rows below the unit upper-triangular block of the f rows.

    Row operations keep the determinant, and the remaining lower-right block
    has the same determinant as the whole matrix.
    """
    N = len(A)
    rows = [list(r) for r in A]
    for r in range(m, N):
        row = rows[r]
        for j in range(m):
            c = row[j]
            if c.is_zero():
                continue
            piv = rows[j]
            for k in range(j, N):
                if not piv[k].is_zero():
                    row[k] = row[k] - c * piv[k]
    return [row[m:] for row in rows[m:]]


def _row_weight_bound(A):
    total = Fraction(0)
    for row in A:
        best = Fraction(0)
        for c in row:
            for p in c.terms:
                best = max(best, c.weight(p))
        total += best
    return total


def resultant_order(f: SeriesPoly, g: SeriesPoly, start=None):
    """O(Res_y(f, g)) computed with entries truncated at a doubling weight bound.

    Returns MINUS_INFINITY when the resultant vanishes identically (exact
    inputs only).
    """
    g = f._coerce(g)
    A = _sylvester(f, g)
    cap = min((c.precision for row in A for c in row if c.precision is not None), default=None)
    bound = _row_weight_bound(A) + 1
    W = Fraction(start) if start is not None else Fraction(max(1, f.max_weight()))
    while True:
        if cap is not None and W > cap:
            W = cap
        res = resultant_y(f, g, precision=W)
        if res.terms:
            return order_data(res).order
        if cap is not None and W >= cap:
            raise PrecisionExhausted("resultant vanishes to the available precision")
        if cap is None and W > bound:
            return MINUS_INFINITY
        W *= 2


def discriminant_y(f: SeriesPoly, precision=None) -> FracSeries:
    """``Res_y(f, df/dy)`` with the Sylvester sign convention."""
    if f.degree < 1:
        raise ValueError("discriminant needs degree >= 1")
    return resultant_y(f, f.derivative(), precision=precision)


# -- expansions ------------------------------------------------------------


def g_adic_expansion(f: SeriesPoly, g: SeriesPoly, d: int) -> list[SeriesPoly]:
    """(a_1, ..., a_d) with f = g^d + a_1 g^(d-1) + ... + a_d and deg a_i < deg g."""
    n = f.degree
    if d < 1 or n % d or g.degree * d != n:
        raise ValueError(f"need deg g * d = deg f (got {g.degree} * {d} vs {n})")
    if not f.is_monic() or not g.is_monic():
        raise ValueError("f and g must be monic")
    rems = []
    cur = f
    for _ in range(d):
        cur, r = cur.divmod(g)
        rems.append(r)
    if not (cur - 1).vanishes():
        raise InvariantViolation("g-adic expansion does not terminate with leading digit 1")
    return list(reversed(rems))


def tschirnhausen(f: SeriesPoly, g: SeriesPoly, d: int) -> SeriesPoly:
    """``g + a_1 / d`` where a_1 is the second g-adic digit of f."""
    a1 = g_adic_expansion(f, g, d)[0]
    return g + a1.scale(Fraction(1, d))


def _second_digit(f: SeriesPoly, g: SeriesPoly, d: int) -> SeriesPoly:
    # f = g^(d-1) (g + a_1) + (terms of degree < (d-1) deg g)
    q, _ = f.divmod(g ** (d - 1))
    return q - g


def approximate_root(f: SeriesPoly, d: int, seed: SeriesPoly | None = None) -> SeriesPoly:
    """App(f, d): the fixed point of the Tschirnhausen operator."""
    n = f.degree
    if not f.is_monic():
        raise ValueError("f must be monic")
    if d < 1 or n % d:
        raise ValueError(f"{d} does not divide deg f = {n}")
    k = n // d
    if d == 1:
        return f
    g = seed if seed is not None else SeriesPoly.gen(f.order, f.cone) ** k
    if g.degree != k or not g.is_monic():
        raise ValueError("seed must be monic of degree deg f / d")
    inv = Fraction(1, d)
    for _ in range(k + 3):
        a1 = _second_digit(f, g, d)
        if a1.vanishes():
            return g
        g = g + a1.scale(inv)
    raise NoConvergence(f"Tschirnhausen iteration did not stabilise within {k + 2} steps")


def G_adic_expansion(g: SeriesPoly, G, e_seq=None) -> dict:
    """Expansion ``g = sum c_b G_1^b_1 ... G_k^b_k`` with series coefficients c_b.

    ``G`` is a sequence of monic polynomials of increasing degree starting
    with a degree-one polynomial; ``b_i < e_seq[i]`` is enforced for every
    index covered by ``e_seq``.
    """
    G = list(G)
    if not G or G[0].degree != 1:
        raise ValueError("the first polynomial of the family must have degree 1")
    out: dict = {}

    def expand(p: SeriesPoly, idx: int, suffix: tuple):
        if p.is_zero():
            return
        if idx < 0:
            if p.degree > 0:
                raise InvariantViolation("G-adic digit of positive degree left over")
            c = p.coeffs[0]
            if not c.is_zero():
                out[suffix] = c
            return
        k = 0
        cur = p
        while not cur.is_zero():
            cur, r = cur.divmod(G[idx])
            expand(r, idx - 1, (k,) + suffix)
            k += 1

    expand(g, len(G) - 1, ())
    if e_seq is not None:
        for b in out:
            for i, bound in enumerate(e_seq):
                if i < len(b) and b[i] >= bound:
                    raise InvariantViolation(f"G-adic exponent {b} violates bound e_{i + 1}={bound}")
    return dict(sorted(out.items()))


def G_adic_reconstruct(expansion: dict, G) -> SeriesPoly:
    total = None
    for b, c in expansion.items():
        term = SeriesPoly.from_series(c)
        for Gi, k in zip(G, b):
            if k:
                term = term * Gi ** k
        total = term if total is None else total + term
    return total


def minimal_polynomial(y: FracSeries, n: int, *, expected: int | None = None,
                       strict: bool = True) -> SeriesPoly:
    """Product of (Y - y_k) over the distinct conjugates of y."""
    conj = conjugates(y, n, expected=expected, strict=strict)
    Y = SeriesPoly.gen(y.order, y.cone)
    result = SeriesPoly._raw([y._coerce(1)], y.order, y.cone)
    for yk in conj:
        result = result * (Y - yk)
    fixed = []
    for c in result.coeffs:
        r = c.reduce_denominator()
        if r.denom != 1:
            raise NotGaloisStable(
                f"coefficient keeps fractional exponents (denominator {r.denom})")
        fixed.append(r)
    return SeriesPoly._raw(fixed, y.order, y.cone)
