"""Preparation shear, monomial blowup, quasi-ordinary root expansion,
unblowing into the cone C and freeness certificates.

Conventions: ``f`` lives in K[[x]][y] with the orthant order of weight
(1, ..., 1); the blowup ``x_1 -> X_1, x_i -> X_i X_1`` lands in the same
ring, and unblowing a root sends ``X^a`` to ``x^(a_1 - a_2 - ... - a_e, a_2, ..., a_e)``,
which lies in the cone C generated by (1,0,..,0) and (-1,0,..,1,..,0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .checks import Check
from .cones import Cone, OrderSpec, compatible_order, cone_contains, orthant, standard_blowup_cone
from .cyclotomic import CycNum, nonzero_roots
from .exceptions import (
    AppMismatch,
    InvariantViolation,
    NoRootBranch,
    NotFree,
    NotQuasiOrdinaryAfterBlowup,
    PrecisionExhausted,
)
from .series import FracSeries, conjugates, order_data
from .ypoly import SeriesPoly, approximate_root, discriminant_y, eval_at, minimal_polynomial

__all__ = [
    "PrepResult",
    "Certificate",
    "homogeneous_parts",
    "is_quasi_ordinary",
    "prepare_shear",
    "blowup",
    "unblow_series",
    "unblow_poly",
    "qo_root_expand",
    "free_certificate",
    "orbit_factorization",
    "free_approximate_root_check",
    "blowup_order",
    "orthant_order",
    "to_blowup_cone",
    "shear",
    "blowup_root_finder",
]


def orthant_order(e: int) -> OrderSpec:
    return OrderSpec((1,) * e)


def blowup_order(e: int) -> OrderSpec:
    return compatible_order(standard_blowup_cone(e))


def _blow_matrix(e: int):
    return [[1] * e] + [[1 if j == i else 0 for j in range(e)] for i in range(1, e)]


def _unblow_matrix(e: int):
    return [[1] + [-1] * (e - 1)] + [[1 if j == i else 0 for j in range(e)] for i in range(1, e)]


@dataclass(frozen=True)
class PrepResult:
    t: int
    sheared: SeriesPoly
    a: int
    epsilon_a_at_t: CycNum
    discriminant: FracSeries = field(compare=False, repr=False)


# -- discriminant analysis ---------------------------------------------------


def _require_integral(s: FracSeries, what: str):
    r = s.reduce_denominator()
    if r.denom != 1 or any(c < 0 for p in r.terms for c in p):
        raise ValueError(f"{what} must have nonnegative integer exponents")
    return r


def homogeneous_parts(delta: FracSeries):
    """(a, {degree: part}) for the decomposition by total degree."""
    delta = _require_integral(delta, "discriminant")
    if delta.is_zero():
        raise ValueError("zero has no lowest homogeneous part")
    if delta.vanishes():
        raise PrecisionExhausted("discriminant vanishes to precision")
    if any(w != 1 for w in delta.order.weight):
        # total degree is only controlled by the precision for weight (1,...,1)
        if not delta.exact:
            raise ValueError("homogeneous parts of a truncated series need the weight (1,...,1)")
    parts: dict = {}
    for p, c in delta.terms.items():
        parts.setdefault(sum(p), {})[p] = c
    a = min(parts)
    out = {deg: FracSeries(t, 1, order=delta.order, cone=delta.cone) for deg, t in sorted(parts.items())}
    return a, out


def is_quasi_ordinary(f: SeriesPoly, *, discriminant: FracSeries | None = None):
    """(True, alpha) when the discriminant is x^alpha times a unit, else (False, None).

    For truncated coefficients the answer holds on the guaranteed region.
    """
    delta = discriminant if discriminant is not None else discriminant_y(f)
    if delta.is_zero():
        return False, None
    if delta.vanishes():
        raise PrecisionExhausted("discriminant vanishes to precision")
    delta = _require_integral(delta, "discriminant")
    alpha = tuple(min(p[i] for p in delta.terms) for i in range(delta.dim))
    if alpha in delta.terms:
        return True, alpha
    return False, None


def _shear_series(c: FracSeries, t: int) -> FracSeries:
    c = _require_integral(c, "coefficient")
    terms: dict = {}
    for p, v in c.terms.items():
        pieces = [[(k, comb(pi, k) * t ** (pi - k)) for k in range(pi + 1)] for pi in p[1:]]
        for combo in itertools.product(*pieces):
            coeff = 1
            for _, b in combo:
                coeff *= b
            if coeff == 0:
                continue
            q1 = p[0] + sum(pi - k for (k, _), pi in zip(combo, p[1:]))
            q = (q1,) + tuple(k for k, _ in combo)
            val = v * coeff
            terms[q] = terms[q] + val if q in terms else val
    return FracSeries(terms, 1, order=c.order, cone=c.cone, precision=c.precision)


def shear(f: SeriesPoly, t: int) -> SeriesPoly:
    """f(X_1, X_2 + t X_1, ..., X_e + t X_1, y)."""
    return f.map_coefficients(lambda c: _shear_series(c, t))


def _epsilon(u_a: FracSeries, t: int) -> CycNum:
    total = CycNum(0)
    for p, v in u_a.terms.items():
        total = total + v * t ** sum(p[1:])
    return total


def prepare_shear(f: SeriesPoly) -> PrepResult:
    """Smallest t >= 0 whose shear puts a nonzero X_1^a term into u_a."""
    if not f.is_monic():
        raise ValueError("f must be monic")
    delta = discriminant_y(f)
    if delta.is_zero():
        raise ValueError("f has a zero discriminant (repeated factor)")
    a, parts = homogeneous_parts(delta)
    u_a = parts[a]
    for t in range(0, a + 2):
        eps = _epsilon(u_a, t)
        if not eps.is_zero():
            sheared = f if t == 0 else shear(f, t)
            return PrepResult(t, sheared, a, eps, delta)
    raise InvariantViolation("no shear parameter found within the degree bound")


# -- blowup / unblow ---------------------------------------------------------


def blowup(f: SeriesPoly, *, check: bool = True) -> SeriesPoly:
    """F(X, y) = f(X_1, X_2 X_1, ..., X_e X_1, y); quasi-ordinary when f is prepared."""
    e = f.dim
    src = f.cone or orthant(e)
    F = f.map_exponents(_blow_matrix(e), cone=orthant(e), order=orthant_order(e), source_cone=src)
    if check and e > 1:
        qo, _ = is_quasi_ordinary(F)
        if not qo:
            raise NotQuasiOrdinaryAfterBlowup("the blown-up polynomial is not quasi-ordinary")
    return F


def unblow_series(Y: FracSeries, cone: Cone | None = None) -> FracSeries:
    """Send X^a to x^(a_1 - a_2 - ... - a_e, a_2, ..., a_e) inside the blowup cone."""
    e = Y.dim
    C = cone or standard_blowup_cone(e)
    return Y.map_exponents(_unblow_matrix(e), cone=C, order=compatible_order(C),
                           source_cone=orthant(e))


def unblow_poly(F: SeriesPoly, cone: Cone | None = None) -> SeriesPoly:
    e = F.dim
    C = cone or standard_blowup_cone(e)
    return F.map_exponents(_unblow_matrix(e), cone=C, order=compatible_order(C),
                           source_cone=orthant(e))


def to_blowup_cone(f: SeriesPoly) -> SeriesPoly:
    """View an orthant polynomial inside K_C[[x]][y]."""
    e = f.dim
    C = standard_blowup_cone(e)
    return f.map_exponents([[int(i == j) for j in range(e)] for i in range(e)],
                           cone=C, order=compatible_order(C), source_cone=f.cone or orthant(e))


# -- quasi-ordinary roots -----------------------------------------------------


def _powers(y: FracSeries, n: int, W):
    out = [y.constant(1)]
    for _ in range(n):
        out.append((out[-1] * y).truncated(W))
    return out


def _taylor(coeffs, pw, k: int):
    total = None
    for i in range(k, len(coeffs)):
        a = coeffs[i]
        if a.is_zero():
            continue
        term = (a * pw[i - k]).scale(comb(i, k))
        total = term if total is None else total + term
    return total if total is not None else pw[0].zero()


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def qo_root_expand(F: SeriesPoly, T, *, check_qo: bool = True, max_steps: int = 100_000) -> FracSeries:
    """A root of the quasi-ordinary polynomial F, exact below weight T.

    The next exponent is read off the lower boundary of the Newton polygon
    of the Taylor coefficients of F at the current approximation (the
    largest root valuation) and its coefficient solves the residual
    polynomial; in the Newton regime ``O(F(y)) > 2 O(F'(y))`` a whole
    quotient ``-F(y)/F'(y)`` is added up to the exponent it certifies.
    """
    T = Fraction(T)
    if T <= 0:
        raise ValueError("precision must be positive")
    if not F.is_monic():
        raise ValueError("F must be monic")
    n = F.degree
    order = F.order
    key = order.key
    cone = F.cone or orthant(F.dim)
    if check_qo:
        qo, _ = is_quasi_ordinary(F)
        if not qo:
            raise NoRootBranch("F is not quasi-ordinary")
    one = F._one()
    if n == 1:
        return -F.coeffs[0]
    W = n * T
    if F.precision is not None:
        W = min(W, F.precision)
    T_eff = min(T, W / n)
    coeffs = [c.truncated(W) for c in F.coeffs]
    y = one.zero()
    last = None
    for _ in range(max_steps):
        pw = _powers(y, n, W)
        B0 = _taylor(coeffs, pw, 0)
        if B0.is_zero():
            return y
        if B0.vanishes():
            if F.is_exact() and eval_at(F, y).is_zero():
                return y
            break
        o0 = order_data(B0).order
        B1 = _taylor(coeffs, pw, 1)
        o1 = order_data(B1).order if B1.terms else None
        if o1 is not None and key(o0) > key(tuple(2 * c for c in o1)):
            v = _sub(o0, o1)
            if order.degree(v) >= T_eff:
                break
            y = _newton_step(y, B0, B1, o1, v, T_eff, last, cone)
            last = max((tuple(Fraction(c, y.denom) for c in p) for p in y.terms), key=key)
            continue
        B = [B0, B1] + [_taylor(coeffs, pw, k) for k in range(2, n + 1)]
        cands = []
        for j in range(1, n + 1):
            if B[j].terms:
                oj = order_data(B[j]).order
                cands.append((j, tuple((a - b) / j for a, b in zip(o0, oj))))
        mu = max((c[1] for c in cands), key=key)
        if order.degree(mu) >= T_eff:
            break
        support = [0] + [j for j, m in cands if m == mu]
        P = [CycNum(0)] * (max(support) + 1)
        for j in support:
            P[j] = order_data(B[j]).lc
        roots = nonzero_roots(P)
        if not roots:
            raise NoRootBranch(f"no nonzero root of the residual polynomial at exponent {mu}")
        _check_exponent(mu, last, key, cone)
        y = y + FracSeries.monomial(mu, roots[0], order=order, cone=F.cone)
        last = mu
    else:
        raise NoRootBranch("root expansion did not reach the requested precision")
    residual = eval_at(F, y).truncated(T_eff)
    if not residual.vanishes():
        raise NoRootBranch("residual check failed: F(y) has a term below the precision")
    return y.truncated(T_eff)


def _check_exponent(mu, last, key, cone):
    if last is not None and key(mu) <= key(last):
        raise NoRootBranch(f"next exponent {mu} does not increase")
    if not cone_contains(cone, mu):
        raise NoRootBranch(f"exponent {mu} leaves the cone")


def _newton_step(y, B0, B1, o1, v, T_eff, last, cone):
    order = y.order
    key = order.key
    bound = key(tuple(2 * a - b for a, b in zip(v, o1)))
    p1, c1 = B1.leading_term()
    inv = c1.inverse()
    r = B0
    added = []
    while r.terms:
        pr, cr = r.leading_term()
        mu = tuple(Fraction(a, r.denom) - b for a, b in zip(pr, o1))
        if key(mu) >= bound or order.degree(mu) >= T_eff:
            break
        _check_exponent(mu, last, key, cone)
        t = FracSeries.monomial(mu, cr * inv, order=order, cone=y.cone)
        r = r - t * B1
        added.append(t)
        last = mu
    for t in added:
        y = y - t
    return y


# -- freeness -----------------------------------------------------------------


@dataclass
class Certificate:
    free: bool
    n: int
    precision: object
    conjugate_count: int
    checks: list
    root: FracSeries | None = None
    factors: list | None = None

    def to_json(self) -> dict:
        out = {
            "free": self.free,
            "n": self.n,
            "precision": None if self.precision is None else str(self.precision),
            "conjugates": self.conjugate_count,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.root is not None:
            out["root"] = self.root.literal()
        if self.factors is not None:
            out["factors"] = [str(g) for g in self.factors]
        return out


def _series_denominator(y: FracSeries) -> int:
    return y.reduce_denominator().denom


def orbit_factorization(f: SeriesPoly, root: FracSeries, root_finder=None) -> list:
    """Split f into the minimal polynomials of successive root orbits."""
    factors = []
    cur, r = f, root
    while cur.degree > 0:
        if cur.degree == 1:
            factors.append(cur)
            break
        P = minimal_polynomial(r, _series_denominator(r), strict=False)
        q, rem = cur.divmod(P)
        if not rem.vanishes():
            raise InvariantViolation("orbit polynomial does not divide f to precision")
        factors.append(P)
        cur = q
        if cur.degree == 0:
            break
        if cur.degree == 1:
            continue
        if root_finder is None:
            raise InvariantViolation("a root finder is needed for the remaining factor")
        r = root_finder(cur)
    return factors


def free_certificate(f: SeriesPoly, n: int, root: FracSeries, T=None, *,
                     root_finder=None) -> Certificate:
    """Certify that f is free of degree n with the given root, to precision T."""
    if f.degree != n:
        raise ValueError(f"deg f = {f.degree} but n = {n}")
    if n % _series_denominator(root):
        raise ValueError("root denominator must divide n")
    T = Fraction(T) if T is not None else root.precision
    checks = []
    residual = eval_at(f, root)
    reach = T
    if residual.precision is not None:
        reach = residual.precision if reach is None else min(reach, residual.precision)
    res_ok = (residual.truncated(reach) if reach is not None else residual).vanishes()
    checks.append(Check("f(x, root) = 0", res_ok,
                        {"to_weight": None if reach is None else str(reach)}))
    conj = _conjugates(root, n)
    count = len(conj)
    checks.append(Check("n distinct conjugates", count == n, {"count": count, "n": n}))
    try:
        mp = minimal_polynomial(root, n, strict=False)
        same = mp.degree == f.degree and mp.agrees_with(f)
    except Exception as exc:  # NotGaloisStable and friends
        same, mp = False, None
        checks.append(Check("minimal polynomial reconstruction", False, str(exc)))
    else:
        checks.append(Check("minimal polynomial reconstruction", same,
                            {"degree": mp.degree}))
    free = all(c.passed for c in checks)
    cert = Certificate(free, n, reach, count, checks, root=root)
    if not free:
        if res_ok and count < n:
            cert.factors = orbit_factorization(f, root, root_finder)
        raise NotFree("freeness check failed: " + ", ".join(c.name for c in checks if not c.passed),
                      cert)
    return cert


def _conjugates(root, n):
    return conjugates(root, n, strict=False)


def blowup_root_finder(T):
    """Root finder on K_C[[x]][y] through the blowup."""

    def find(g: SeriesPoly) -> FracSeries:
        G = blowup(g, check=False)
        return unblow_series(qo_root_expand(G, T, check_qo=False))

    return find


def free_approximate_root_check(f: SeriesPoly, d: int, T) -> Certificate:
    """App(f, d) computed directly and through the blowup must coincide; then certify it free.

    ``f`` is either an orthant polynomial (quasi-ordinary or prepared) or a
    polynomial already viewed in the blowup cone.
    """
    n = f.degree
    if d < 1 or n % d:
        raise ValueError(f"{d} does not divide deg f = {n}")
    e = f.dim
    C = standard_blowup_cone(e)
    in_cone = f.cone == C
    direct = approximate_root(f, d)
    F = blowup(f, check=False)
    via = unblow_poly(approximate_root(F, d))
    direct_C = direct if in_cone else to_blowup_cone(direct)
    if not (via == direct_C):
        raise AppMismatch("App(f, d) differs from the unblown App(F, d)")
    app_F = approximate_root(F, d)
    k = n // d
    qo = False
    if not in_cone:
        try:
            qo, _ = is_quasi_ordinary(f)
        except PrecisionExhausted:
            qo = False
    if qo:
        root = qo_root_expand(direct, T)
        return free_certificate(direct, k, root, T)
    root = unblow_series(qo_root_expand(app_F, T))
    return free_certificate(direct_C, k, root, T, root_finder=blowup_root_finder(T))
