import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from helpers import F3, like, poly, series

from freepoly.exceptions import DegenerateCharacteristicData, NotRepresentable
from freepoly.invariants import (
    SemigroupDesc,
    characteristic_data,
    expansion_order,
    galois_counts,
    gcd_sequences,
    order_pair,
    pseudo_root,
    semigroup_generators,
    semigroup_representation,
)
from freepoly.lattice import int_det, lattice_gcd, lattice_membership
from freepoly.preparation import qo_root_expand

CUSP_ROOT = "series(n=2; (3) -> 1)"
F3_ROOT = "series(n=4; (2,2) -> 1; (3,3) -> 1)"


def _leibniz(M):
    n = len(M)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, j in enumerate(perm):
            prod *= M[i][j]
        total += -prod if inv % 2 else prod
    return total


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda k: st.lists(st.lists(st.integers(-6, 6), min_size=k, max_size=k), min_size=k, max_size=k)))
def test_bareiss_matches_leibniz(M):
    assert int_det(M) == _leibniz(M)


def _member_brute(n, gens, v):
    for coeffs in itertools.product(range(n), repeat=len(gens)):
        w = list(v)
        for c, g in zip(coeffs, gens):
            w = [a - c * b for a, b in zip(w, g)]
        if all(a % n == 0 for a in w):
            return True
    return False


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4, 6]), st.integers(1, 3), st.data())
def test_lattice_membership_matches_enumeration(n, e, data):
    vec = st.lists(st.integers(-8, 8), min_size=e, max_size=e).map(tuple)
    gens = data.draw(st.lists(vec, max_size=2))
    v = data.draw(vec)
    member, k = lattice_membership(n, gens, v)
    assert member == _member_brute(n, gens, v)
    least = next(j for j in range(1, n + 1) if _member_brute(n, gens, tuple(j * x for x in v)))
    assert k == least


def test_lattice_examples():
    assert lattice_membership(2, [(1, 1)], (1, 0)) == (False, 2)
    assert lattice_membership(2, [(1, 1)], (1, 1))[0]
    assert lattice_membership(4, [(2, 2)], (5, 5)) == (False, 2)
    assert lattice_gcd(4, 2, [(2, 2), (3, 3)]) == 4


def test_characteristic_exponents():
    assert characteristic_data(series(CUSP_ROOT), 2).m == ((3,),)
    assert characteristic_data(series(F3_ROOT), 4).m == ((2, 2), (3, 3))
    y = series("series(n=2; (1,0) -> 1; (0,1) -> 1)")
    assert characteristic_data(y, 4).m == ((0, 2), (2, 0))
    assert characteristic_data(series("series(n=1; (1,2) -> 3)"), 1).m == ()


def test_gcd_sequences_examples():
    s = gcd_sequences(2, 1, [(3,)])
    assert (s.D, s.d, s.e_seq, s.r) == ((2, 1), (2, 1), (2,), ((2,), (3,)))
    s = gcd_sequences(2, 2, [(1, 1)])
    assert (s.D, s.d, s.e_seq, s.r) == ((4, 2), (2, 1), (2,), ((2, 0), (0, 2), (1, 1)))
    s = gcd_sequences(4, 2, [(2, 2), (3, 3)])
    assert (s.D, s.d, s.e_seq) == ((16, 8, 4), (4, 2, 1), (2, 2))
    assert s.rh == ((2, 2), (5, 5))


def test_gcd_sequences_reject_degenerate_data():
    with pytest.raises(DegenerateCharacteristicData):
        gcd_sequences(4, 1, [(2,)])
    with pytest.raises(DegenerateCharacteristicData):
        gcd_sequences(2, 1, [(3,), (5,)])


def test_galois_counts_examples():
    y = series(F3_ROOT)
    assert tuple(galois_counts(y, 4, characteristic_data(y, 4))) == ((16, 8), (8, 4), (4, 2), (2, 1))
    y = series(CUSP_ROOT)
    c = galois_counts(y, 2, characteristic_data(y, 2))
    assert (c.R, c.S) == ((2,), (1,))


def test_order_pair_examples():
    f = poly("y^2 - x1^3")
    assert order_pair(f, series(CUSP_ROOT), like(f, "y - x1^2")) == (3,)
    f3, y = poly(F3), series(F3_ROOT)
    assert order_pair(f3, y, like(f3, "y")) == (2, 2)
    assert order_pair(f3, y, like(f3, "y^3")) == (6, 6)


def test_pseudo_roots():
    f3, y = poly(F3), series(F3_ROOT)
    cd = characteristic_data(y, 4)
    assert pseudo_root(y, 4, cd, 1) == like(f3, "y")
    G2 = pseudo_root(y, 4, cd, 2)
    assert G2 == like(f3, "y^2 - x1*x2")
    assert pseudo_root(series(CUSP_ROOT), 2, characteristic_data(series(CUSP_ROOT), 2), 1) == like(
        poly("y^2 - x1^3"), "y")


def test_semigroup_generators():
    f = poly("y^2 - x1^3")
    assert semigroup_generators(f, qo_root_expand(f, 8)).generators == ((2,), (3,))
    f = poly("y^2 - x1*x2")
    assert semigroup_generators(f, qo_root_expand(f, 8)).generators == ((2, 0), (0, 2), (1, 1))
    f3 = poly(F3)
    assert semigroup_generators(f3, series(F3_ROOT)).generators == ((4, 0), (0, 4), (2, 2), (5, 5))


F3_DESC = SemigroupDesc(4, 2, ((4, 0), (0, 4), (2, 2), (5, 5)), (2, 2))


def test_semigroup_representation_examples():
    assert tuple(semigroup_representation(F3_DESC, (6, 6))) == ((1, 1), (1, 0))
    assert tuple(semigroup_representation(F3_DESC, (5, 5))) == ((0, 0), (0, 1))
    quad = SemigroupDesc(2, 2, ((2, 0), (0, 2), (1, 1)), (2,))
    with pytest.raises(NotRepresentable):
        semigroup_representation(quad, (1, 0))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_representation_round_trip(coeffs):
    # any nonnegative combination with alpha_j < e_j comes back unchanged
    a0, a1, b1, b2 = coeffs
    b1, b2 = b1 % 2, b2 % 2
    gens = F3_DESC.generators
    a = tuple(a0 * gens[0][i] + a1 * gens[1][i] + b1 * gens[2][i] + b2 * gens[3][i] for i in range(2))
    rep = semigroup_representation(F3_DESC, a)
    assert rep.alpha == (b1, b2)
    assert rep.alpha0 == (a0, a1)


def test_expansion_order_examples():
    f3, y = poly(F3), series(F3_ROOT)
    cd = characteristic_data(y, 4)
    seq = gcd_sequences(4, 2, cd)
    G = [pseudo_root(y, 4, cd, i) for i in (1, 2)]
    val, b = expansion_order(f3, G, seq, like(f3, "y^3"))
    assert val == (6, 6) and b == (1, 0, 0)
    assert expansion_order(f3, G, seq, G[1])[0] == (5, 5)
    # deg g < n/d_2: O(f, g) = d_2 O(G_2, g)
    yi = series("series(n=2; (1,1) -> 1)")
    g = like(f3, "y")
    assert expansion_order(f3, G, seq, g)[0] == tuple(2 * c for c in order_pair(G[1], yi, g, n=2))


def test_orders_are_additive():
    f3, y = poly(F3), series(F3_ROOT)
    g, h = like(f3, "y^2 - x1*x2 + x1^3"), like(f3, "y + x1*x2")
    og, oh = order_pair(f3, y, g), order_pair(f3, y, h)
    assert order_pair(f3, y, g * h) == tuple(a + b for a, b in zip(og, oh))
    assert og == (5, 5) and oh == (2, 2)
