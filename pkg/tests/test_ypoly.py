import random
from fractions import Fraction

import pytest
from helpers import F3, like, poly, series, series_like
from hypothesis import given, settings
from hypothesis import strategies as st
from randroots import random_case, random_g

from freepoly.exceptions import InvariantViolation
from freepoly.series import FracSeries, conjugates
from freepoly.ypoly import (
    G_adic_expansion,
    G_adic_reconstruct,
    SeriesPoly,
    _berkowitz_det,
    _sylvester,
    approximate_root,
    discriminant_y,
    eval_at,
    g_adic_expansion,
    minimal_polynomial,
    resultant_y,
    tschirnhausen,
)


def test_eval_examples():
    f = poly("y^2 - x1^3")
    assert eval_at(f, series("series(n=2; (3) -> 1)")).is_zero()
    assert eval_at(f, series_like(f, "series(n=1; (2) -> 1)")) == like(f, "x1^4 - x1^3").coeffs[0]
    assert eval_at(f, FracSeries({}, order=f.order)) == f.coeffs[0]


def test_discriminant_examples():
    # Sylvester rows of f first: Res(y^2 + c, 2y) = 4c
    for text, want in [("y^2 - x2", "-4*x2"), ("y^2 - x1*x2", "-4*x1*x2"),
                       ("y^2 - (x1^3 + x2^3)", "-4*x1^3 - 4*x2^3")]:
        f = poly(text, e=2)
        assert discriminant_y(f) == like(f, want).coeffs[0]


def _plain_resultant(f, g):
    """Berkowitz on the full Sylvester matrix, no block elimination."""
    return _berkowitz_det(_sylvester(f, g), f._one(), f._zero())


def _product_resultant(f, y, n, g):
    """Res(f, g) = prod g(y_k) over the roots of monic f."""
    out = None
    for yk in conjugates(y, n):
        v = eval_at(g, yk)
        out = v if out is None else out * v
    return out.reduce_denominator()


def test_resultant_three_ways_on_f3():
    f3, y = poly(F3), series("series(n=4; (2,2) -> 1; (3,3) -> 1)")
    for text in ["y", "y^2 - x1*x2", "y^3 + x1 - 2*x2*y", "y^5 + x1^2*x2*y^2 + 7"]:
        g = like(f3, text)
        r = resultant_y(f3, g)
        assert r == _plain_resultant(f3, g)
        assert r == _product_resultant(f3, y, 4, g)


@pytest.mark.parametrize("seed", range(6))
def test_resultant_three_ways_random(seed):
    rng = random.Random(seed)
    n, e = rng.choice([(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
    f, y, _ = random_case(rng, n, e, blowup=False)
    for _ in range(2):
        g = random_g(rng, f, max_degree=n + 1)
        r = resultant_y(f, g)
        assert r == _plain_resultant(f, g)
        assert r == _product_resultant(f, y, n, g)


def test_g_adic_examples():
    f = poly("y^2 - x1^3")
    assert g_adic_expansion(f, like(f, "y"), 2) == [like(f, "0"), like(f, "-x1^3")]
    assert g_adic_expansion(f, like(f, "y - x1"), 2) == [like(f, "2*x1"), like(f, "x1^2 - x1^3")]
    f3 = poly(F3)
    a1, a2 = g_adic_expansion(f3, like(f3, "y^2 - x1*x2"), 2)
    assert a1.is_zero()
    assert a2 == like(f3, "-4*x1^2*x2^2*y - x1^3*x2^3")


def test_tschirnhausen_examples():
    f = poly("y^2 - x1^3")
    assert tschirnhausen(f, like(f, "y - x1"), 2) == like(f, "y")
    assert tschirnhausen(f, like(f, "y"), 2) == like(f, "y")
    f = poly("y^2 + 2*x1*y + x1^3")
    assert tschirnhausen(f, like(f, "y"), 2) == like(f, "y + x1")


def test_approximate_root_examples():
    f = poly("y^2 - x1^3")
    assert approximate_root(f, 2) == like(f, "y")
    f3 = poly(F3)
    assert approximate_root(f3, 2) == like(f3, "y^2 - x1*x2")
    assert approximate_root(f3, 1) == f3
    assert approximate_root(f3, 4) == like(f3, "y")


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.sampled_from([2, 3]))
def test_approximate_root_properties(c, d):
    # f = y^(2d) + lower terms; App(f, d) has degree 2 and deg(f - App^d) < 2d - 2
    f = poly(f"y^{2 * d} + {c[0]}*x1*y^{2 * d - 1} + {c[1]}*x1*x2*y^{2 * d - 2} + {c[2]}*x2*y^3"
             f" + {c[3]}*x1^2*y^2 + {c[4]}*y + {c[5]}*x2^3", e=2)
    app = approximate_root(f, d)
    assert app.degree == 2 and app.is_monic()
    assert (f - app ** d).degree < 2 * d - 2
    # fixpoint: the Tschirnhausen operator leaves it alone
    assert tschirnhausen(f, app, d) == app
    # independent of the seed
    assert approximate_root(f, d, seed=like(f, "y^2 + x1*y + 5")) == app


def test_G_adic_examples():
    f3 = poly(F3)
    G = [like(f3, "y"), like(f3, "y^2 - x1*x2")]
    exp = G_adic_expansion(like(f3, "y^3"), G)
    assert set(exp) == {(1, 1), (1, 0)}
    assert exp[(1, 1)] == 1 and exp[(1, 0)] == like(f3, "x1*x2").coeffs[0]
    assert G_adic_expansion(G[1], G) == {(0, 1): FracSeries({(0, 0): 1}, order=f3.order)}
    low = G_adic_expansion(like(f3, "x1*y + x2"), G)
    assert all(b[1] == 0 for b in low)


def test_G_adic_bounds_are_enforced():
    f3 = poly(F3)
    G = [like(f3, "y"), like(f3, "y^2 - x1*x2")]
    with pytest.raises(InvariantViolation):
        G_adic_expansion(like(f3, "y^4"), G, (2, 2))


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 7), st.integers(0, 2), st.integers(0, 2)),
                       st.integers(-4, 4), max_size=6))
def test_G_adic_reconstructs(terms):
    f3 = poly(F3)
    G = [like(f3, "y + x1"), like(f3, "y^2 - x1*x2 + x2^2*y"), f3]
    Y = SeriesPoly.gen(f3.order)
    g = f3 * 0
    for (k, a, b), c in terms.items():
        g = g + Y ** k * like(f3, f"{c}*x1^{a}*x2^{b}")
    if g.is_zero():
        return
    exp = G_adic_expansion(g, G)
    assert G_adic_reconstruct(exp, G) == g
    assert all(b[0] < 2 and b[1] < 2 for b in exp)


def test_minimal_polynomial_examples():
    y = series("series(n=2; (1,1) -> 1)")
    assert minimal_polynomial(y, 2) == like(poly("y^2 - x1*x2"), "y^2 - x1*x2")
    assert minimal_polynomial(series("series(n=4; (2,2) -> 1; (3,3) -> 1)"), 4) == poly(F3)
    y = series("series(n=1; (1,0) -> 1)")
    assert minimal_polynomial(y, 2) == like(poly("y - x1", e=2), "y - x1")


def test_divmod_identity():
    f3 = poly(F3)
    g = like(f3, "y^2 + x1*y - 3*x2")
    q, r = f3.divmod(g)
    assert r.degree < 2 and q * g + r == f3
    assert resultant_y(f3, g * g) == resultant_y(f3, g) * resultant_y(f3, g)
    assert resultant_y(f3, like(f3, "3")) == Fraction(81)
