"""End-to-end analysis: locate a root, compute every invariant, record the checks.

Each ``run_*`` function returns ``(payload, ok)`` where ``payload`` is a
JSON-ready mapping and ``ok`` tells whether every check passed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .checks import Check
from .cones import Cone, orthant, standard_blowup_cone
from .exceptions import FreePolyError, NotFree, NotQuasiOrdinaryAfterBlowup, PrecisionExhausted
from .invariants import (
    CharData,
    SemigroupDesc,
    _vec,
    characteristic_data,
    expansion_order,
    galois_counts,
    gcd_sequences,
    order_pair,
    pseudo_root,
    semigroup_representation,
    truncated_root,
)
from .lattice import lattice_membership
from .preparation import (
    blowup,
    blowup_root_finder,
    free_approximate_root_check,
    free_certificate,
    is_quasi_ordinary,
    prepare_shear,
    qo_root_expand,
    to_blowup_cone,
    unblow_series,
)
from .report import InvariantReport
from .series import FracSeries, conjugates, order_data
from .ypoly import SeriesPoly, approximate_root, discriminant_y, eval_at

__all__ = [
    "Setting",
    "default_precision",
    "locate_root",
    "build_report",
    "analyze",
    "run_prepare",
    "run_blowup",
    "run_root_expand",
    "run_semigroup",
    "run_approx_root",
    "run_certify",
]

MAX_DOUBLINGS = 4


@dataclass
class Setting:
    """A polynomial at the level where it is analysed, with one of its roots."""

    f: SeriesPoly
    root: FracSeries
    n: int
    cone: Cone
    precision: Fraction | None
    route: str
    shear: int | None = None


def default_precision(f: SeriesPoly) -> Fraction:
    return 4 * (f.max_weight() + 1)


def locate_root(f: SeriesPoly, T, *, mode: str = "orthant", root: FracSeries | None = None,
                require_free: bool = True) -> Setting:
    """Find the analysis level and a root.

    ``mode`` is "orthant" (quasi-ordinary input, or shear + blowup otherwise),
    "blowup" (f already lives in the blowup cone) or "custom" (root required).
    The precision is raised to the point where distinct conjugates separate;
    with ``require_free`` a root with fewer than deg f conjugates raises NotFree.
    """
    T = Fraction(T)
    n = f.degree
    if n < 1 or not f.is_monic():
        raise ValueError("the polynomial must be monic of degree >= 1")
    if root is not None:
        return Setting(f, root, n, f.cone or orthant(f.dim), root.precision, "supplied")
    if mode == "custom":
        raise ValueError("a custom cone needs a root (series literal) in the job")
    if mode == "orthant":
        qo, alpha = is_quasi_ordinary(f)
        if qo:
            T = _separating(f, alpha, T)
            y = _full_orbit(qo_root_expand(f, T, check_qo=False), n, T, require_free)
            return Setting(f, y, n, f.cone or orthant(f.dim), T, "quasi-ordinary")
        prep = prepare_shear(f)
        F, alpha = _blowup_qo(prep.sheared)
        T = _separating(F, alpha, T)
        y = unblow_series(_full_orbit(qo_root_expand(F, T, check_qo=False), n, T, require_free))
        return Setting(to_blowup_cone(prep.sheared), y, n, standard_blowup_cone(f.dim), T,
                       "blowup", prep.t)
    if mode == "blowup":
        F, alpha = _blowup_qo(f)
        T = _separating(F, alpha, T)
        y = unblow_series(_full_orbit(qo_root_expand(F, T, check_qo=False), n, T, require_free))
        return Setting(f, y, n, standard_blowup_cone(f.dim), T, "blowup")
    raise ValueError(f"unknown cone mode {mode!r}")


def _blowup_qo(f: SeriesPoly):
    F = blowup(f, check=False)
    qo, alpha = is_quasi_ordinary(F)
    if not qo:
        raise NotQuasiOrdinaryAfterBlowup("the blown-up polynomial is not quasi-ordinary")
    return F, alpha


def _separating(F: SeriesPoly, alpha, T) -> Fraction:
    """A precision past which distinct conjugates of a root of F already differ.

    Every root difference of a quasi-ordinary F is X^lam times a unit and
    the discriminant is the product of their squares, so 2 lam <= alpha.
    """
    bound = Fraction(F.order.degree(alpha)) / 2 + 1
    return max(Fraction(T), bound)


def _full_orbit(Y: FracSeries, n: int, T, require: bool = True) -> FracSeries:
    """Y itself, after checking that it has n conjugates; fewer means f splits."""
    if not require:
        return Y
    den = Y.reduce_denominator().denom
    if n % den:
        raise NotFree(f"the root has denominator {den}, which does not divide n = {n}: "
                      "the polynomial is not free")
    count = len(conjugates(Y, n, strict=False))
    if count < n:
        raise NotFree(f"the root has {count} distinct conjugates instead of {n} at the separating "
                      f"precision {T}: the polynomial is not free")
    return Y


def _run_check(checks: list, name: str, fn):
    """Append Check(name, ...) from fn() -> (passed, witness); library errors count as failures."""
    try:
        passed, witness = fn()
    except PrecisionExhausted:
        raise
    except FreePolyError as exc:
        passed, witness = False, f"{type(exc).__name__}: {exc}"
    checks.append(Check(name, bool(passed), witness))
    return passed


def _frac_vec(v):
    return [x if isinstance(x, int) else f"{x.numerator}/{x.denominator}" for x in _vec(v)]


def build_report(s: Setting) -> InvariantReport:
    f, y, n = s.f, s.root, s.n
    e = f.dim
    checks: list = []
    residual = eval_at(f, y)
    _run_check(checks, "f(x, y) = 0 on the guaranteed region",
               lambda: (residual.vanishes(), {"precision": residual.precision}))
    cd: CharData = characteristic_data(y, n)
    checks.append(Check("characteristic exponents: conjugate differences agree with support walk",
                        True, [list(m) for m in cd.m]))
    seq = gcd_sequences(n, e, cd)
    h = cd.h
    rh = seq.rh
    checks.append(Check("D_(h+1) = n^(e-1)", seq.D[-1] == n ** (e - 1),
                        {"D_last": seq.D[-1], "n^(e-1)": n ** (e - 1)}))
    checks.append(Check("e_i >= 2", all(x >= 2 for x in seq.e_seq), list(seq.e_seq)))

    def rd_identity():
        bad = []
        for i in range(1, h + 1):
            lhs = tuple(seq.d[i - 1] * c for c in rh[i - 1])
            rhs = tuple(seq.d[i - 1] * c for c in cd.m[i - 1])
            for k in range(1, i):
                rhs = tuple(a + (seq.d[k - 1] - seq.d[k]) * b for a, b in zip(rhs, cd.m[k - 1]))
            if lhs != rhs:
                bad.append(i)
        return not bad, {"failing": bad}

    _run_check(checks, "r_i d_i = sum_(k<i) (d_k - d_(k+1)) m_k + d_i m_i", rd_identity)

    def lattice_check():
        mult = []
        for i in range(1, h + 1):
            k = next((k for k in range(1, n ** e + 1)
                      if lattice_membership(n, rh[: i - 1], [k * c for c in rh[i - 1]])[0]), None)
            mult.append(k)
        return mult == list(seq.e_seq), {"least multiples": mult}

    _run_check(checks, "e_i r_i in (nZ)^e + sum_(j<i) r_j Z, minimally", lattice_check)

    def counts():
        c = galois_counts(y, n, cd, seq)
        return True, {"R": list(c.R), "S": list(c.S), "R~": list(c.R_tilde), "S~": list(c.S_tilde)}

    _run_check(checks, "orbit counts #R, #S, #R~, #S~ match D and d", counts)

    G = [pseudo_root(y, n, cd, i) for i in range(1, h + 1)]
    _run_check(checks, "deg G_i = n / d_i",
               lambda: ([g.degree for g in G] == [n // seq.d[i] for i in range(h)],
                        [g.degree for g in G]))

    def pseudo_exponents():
        got = []
        ok = True
        for i in range(1, h + 1):
            yi = truncated_root(y, n, cd, i).reduce_denominator()
            ni = n // seq.d[i - 1]
            want = [tuple(c // seq.d[i - 1] for c in cd.m[j]) for j in range(i - 1)]
            if any(c % seq.d[i - 1] for j in range(i - 1) for c in cd.m[j]):
                ok = False
            cdi = characteristic_data(yi, ni) if ni % yi.reduce_denominator().denom == 0 else None
            have = list(cdi.m) if cdi is not None else None
            got.append(have)
            ok = ok and have == want
        return ok, got

    _run_check(checks, "G_i has characteristic exponents m_j / d_i (j < i)", pseudo_exponents)

    pseudo_orders = []
    for i, Gi in enumerate(G, start=1):
        try:
            pseudo_orders.append(order_pair(f, y, Gi, n=n))
        except PrecisionExhausted:
            raise
        except FreePolyError:
            pseudo_orders.append(None)
    _run_check(checks, "O(f, G_i) = r_i (substitution and resultant)",
               lambda: (pseudo_orders == [tuple(r) for r in rh],
                        [list(o) if o else None for o in pseudo_orders]))

    apps = [approximate_root(f, seq.d[i]) for i in range(h)]
    app_orders = []
    for a in apps:
        try:
            app_orders.append(order_pair(f, y, a, n=n))
        except PrecisionExhausted:
            raise
        except FreePolyError:
            app_orders.append(None)
    _run_check(checks, "O(f, App(f, d_i)) = r_i",
               lambda: (app_orders == [tuple(r) for r in rh], [list(o) if o else None for o in app_orders]))

    def pair_orders():
        bad = []
        for i in range(2, h + 1):
            yi = truncated_root(y, n, cd, i)
            ni = n // seq.d[i - 1]
            for j in range(1, i):
                got = order_pair(G[i - 1], yi, G[j - 1], n=ni, cross_check=False)
                want = _vec(Fraction(c, seq.d[i - 1]) for c in rh[j - 1])
                if got != want:
                    bad.append([i, j, _frac_vec(got), _frac_vec(want)])
        return not bad, {"failing": bad}

    _run_check(checks, "O(G_i, G_j) = r_j / d_i (j < i)", pair_orders)

    def truncation_orders():
        vals = []
        ok = True
        for i in range(1, h + 1):
            yi = truncated_root(y, n, cd, i)
            got = order_data(eval_at(f, yi)).order
            want = tuple(Fraction(seq.d[i - 1] * c, n) for c in rh[i - 1])
            vals.append(_frac_vec(got))
            ok = ok and tuple(got) == want
        return ok, vals

    _run_check(checks, "O(f(x, y_<m_i)) = r_i d_i / n", truncation_orders)

    desc = SemigroupDesc(n, e, tuple(tuple(v) for v in seq.r), seq.e_seq, s.cone)

    def expansions():
        bad = []
        Y = SeriesPoly.gen(f.order, f.cone)
        family = list(G) + list(apps) + [Y ** k for k in range(1, n)]
        for g in family:
            if g.degree >= n:
                continue
            val, _ = expansion_order(f, G, seq, g, n=n)
            direct = order_pair(f, y, g, n=n, cross_check=False)
            if val != direct:
                bad.append([str(g), list(val), list(direct)])
        return not bad, {"failing": bad}

    _run_check(checks, "G-adic expansion order = O(f, g)", expansions)

    def representations():
        bad = []
        for val in [o for o in pseudo_orders + app_orders if o is not None]:
            rep = semigroup_representation(desc, val)
            back = tuple(n * a for a in rep.alpha0)
            for k, rj in zip(rep.alpha, rh):
                back = tuple(b + k * c for b, c in zip(back, rj))
            if back != tuple(val):
                bad.append(list(val))
        return not bad, {"failing": bad}

    _run_check(checks, "semigroup representation round trip", representations)

    extras = {
        "cone": s.cone.literal(),
        "route": s.route,
        "precision": s.precision,
        "polynomial": str(f),
        "root": y.literal(),
        "pseudo_roots": [str(g) for g in G],
        "approximate_roots": [str(a) for a in apps],
    }
    if s.shear is not None:
        extras["shear"] = s.shear
    return InvariantReport(
        n=n, e=e, h=h, order=f.order,
        characteristic_exponents=[list(m) for m in cd.m],
        D=list(seq.D), d=list(seq.d), e_seq=list(seq.e_seq),
        r=[list(v) for v in seq.r],
        generators=[list(v) for v in desc.generators],
        pseudo_root_orders=[list(o) if o is not None else None for o in pseudo_orders],
        approx_root_orders=[list(o) if o is not None else None for o in app_orders],
        checks=checks, extras=extras,
    )


def _analyze(f, T, mode, root, doublings):
    T = Fraction(T) if T is not None else default_precision(f)
    for attempt in range(doublings + 1):
        try:
            s = locate_root(f, T, mode=mode, root=root)
            return s, build_report(s)
        except PrecisionExhausted:
            if root is not None or attempt == doublings:
                raise
            T *= 2
    raise AssertionError("unreachable")


def analyze(f: SeriesPoly, T=None, *, mode: str = "orthant", root: FracSeries | None = None,
            doublings: int = MAX_DOUBLINGS) -> InvariantReport:
    """Report for f; the precision is doubled while some order is undecidable."""
    return _analyze(f, T, mode, root, doublings)[1]


# -- other subcommands ----------------------------------------------------------


def run_prepare(f: SeriesPoly):
    p = prepare_shear(f)
    payload = {
        "t": p.t,
        "a": p.a,
        "epsilon_a_at_t": p.epsilon_a_at_t,
        "discriminant": p.discriminant.to_expr(),
        "sheared": str(p.sheared),
    }
    return payload, True


def run_blowup(f: SeriesPoly):
    F = blowup(f, check=False)
    qo, alpha = is_quasi_ordinary(F)
    payload = {
        "blowup": str(F),
        "discriminant": discriminant_y(F).to_expr(),
        "quasi_ordinary": qo,
        "alpha": list(alpha) if alpha else None,
        "checks": [Check("blown-up polynomial is quasi-ordinary", qo, list(alpha) if alpha else None)],
    }
    return payload, qo


def run_root_expand(f: SeriesPoly, T, mode: str = "orthant"):
    s = locate_root(f, T, mode=mode, require_free=False)
    residual = eval_at(s.f, s.root)
    ok = residual.truncated(Fraction(T)).vanishes()
    payload = {
        "route": s.route,
        "cone": s.cone.literal(),
        "precision": s.root.precision,
        "root": s.root.literal(),
        "root_expr": s.root.to_expr(),
        "checks": [Check("f(x, root) = 0 below the precision", ok, None)],
    }
    if s.shear is not None:
        payload["shear"] = s.shear
    return payload, ok


def _parse_vector(text: str):
    body = text.strip().strip("()[]")
    return tuple(int(x) for x in body.split(",") if x.strip())


def run_semigroup(f: SeriesPoly, T, values=(), mode="orthant", root=None):
    s, rep = _analyze(f, T, mode, root, MAX_DOUBLINGS)
    desc = SemigroupDesc(rep.n, rep.e, tuple(tuple(v) for v in rep.generators), tuple(rep.e_seq),
                         s.cone)
    reps = []
    for v in values:
        vec = _parse_vector(v) if isinstance(v, str) else tuple(v)
        try:
            r = semigroup_representation(desc, vec)
            reps.append({"value": list(vec), "alpha0": list(r.alpha0), "alpha": list(r.alpha)})
        except FreePolyError as exc:
            reps.append({"value": list(vec), "error": f"{type(exc).__name__}: {exc}"})
    payload = {"generators": rep.generators, "e_seq": rep.e_seq, "representations": reps,
               "checks": rep.checks}
    return payload, rep.passed


def run_approx_root(f: SeriesPoly, T, d=None, mode="orthant"):
    T = Fraction(T)
    s = locate_root(f, T, mode=mode)
    ds = [int(d)] if d is not None else None
    if ds is None:
        cd = characteristic_data(s.root, s.n)
        ds = list(gcd_sequences(s.n, s.f.dim, cd).d[:-1])
    items = []
    ok = True
    for dd in ds:
        app = approximate_root(s.f, dd)
        entry = {"d": dd, "app": str(app)}
        try:
            entry["order"] = list(order_pair(s.f, s.root, app))
        except FreePolyError as exc:
            entry["order"] = f"{type(exc).__name__}: {exc}"
            ok = False
        try:
            cert = free_approximate_root_check(s.f, dd, T)
            entry["certificate"] = cert.to_json()
        except NotFree as exc:
            entry["certificate"] = exc.certificate.to_json() if exc.certificate else str(exc)
            ok = False
        except FreePolyError as exc:
            entry["certificate"] = f"{type(exc).__name__}: {exc}"
            ok = False
        items.append(entry)
    return {"route": s.route, "approximate_roots": items}, ok


def run_certify(f: SeriesPoly, T, mode="orthant", root=None):
    T = Fraction(T)
    s = locate_root(f, T, mode=mode, root=root, require_free=False)
    T = s.precision if s.precision is not None else T
    finder = blowup_root_finder(T) if s.route == "blowup" else (
        (lambda g: qo_root_expand(g, T, check_qo=False)) if s.route == "quasi-ordinary" else None)
    try:
        cert = free_certificate(s.f, s.n, s.root, T, root_finder=finder)
        payload, ok = cert.to_json(), True
    except NotFree as exc:
        payload = exc.certificate.to_json() if exc.certificate else {"free": False}
        payload["error"] = str(exc)
        ok = False
    payload = {"route": s.route, "cone": s.cone.literal(), **payload}
    if s.shear is not None:
        payload["shear"] = s.shear
    return payload, ok
