from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freepoly.cyclotomic import CycNum, root_of_unity
from freepoly.exceptions import PrecisionExhausted
from freepoly.parsing import parse_series
from freepoly.preparation import orthant_order
from freepoly.series import (
    MINUS_INFINITY,
    FracSeries,
    apply_automorphism,
    conjugates,
    order_data,
    truncate_below,
)

O1, O2 = orthant_order(1), orthant_order(2)
I = root_of_unity(1, 4)


def mono(exp, c=1, order=O2, precision=None):
    return FracSeries.monomial(exp, c, order=order, precision=precision)


def test_order_examples():
    z = mono([Fraction(3, 2)], order=O1) - mono([2], order=O1)
    od = order_data(z)
    assert od.order == (Fraction(3, 2),) and od.lc == 1
    assert order_data(FracSeries({}, order=O1)).order is MINUS_INFINITY
    z = mono([Fraction(1, 2)] * 2) + mono([Fraction(3, 4)] * 2)
    assert order_data(z).order == (Fraction(1, 2), Fraction(1, 2))


def test_truncated_zero_has_no_order():
    with pytest.raises(PrecisionExhausted):
        order_data(FracSeries({}, order=O1, precision=3))


def test_arithmetic_examples():
    a = mono([Fraction(3, 2)], order=O1)
    assert (a - a).is_zero()
    u = mono([Fraction(1, 2)] * 2)
    assert u * u == mono([1, 1])


def test_product_precision():
    # min(T_a + O(b), T_b + O(a)): the tail of b meets the constant of a at 5
    a = FracSeries({(0,): 1, (1,): 2}, order=O1, precision=5)
    b = FracSeries({(1,): 1, (3,): 1}, order=O1, precision=5)
    p = a * b
    assert p.precision == 5
    assert p == FracSeries({(1,): 1, (2,): 2, (3,): 1, (4,): 2}, order=O1, precision=5)
    # with O(a) = 2 and O(b) = 1 both tails start later
    q = FracSeries({(2,): 1}, order=O1, precision=5) * b
    assert q.precision == 6


def test_truncate_below():
    u, v = mono([Fraction(1, 2)] * 2), mono([Fraction(3, 4)] * 2)
    y = u + v
    assert truncate_below(y, (Fraction(3, 4),) * 2) == u
    assert truncate_below(y, (0, 0)).is_zero()
    assert truncate_below(y, (5, 5)) == y


def test_automorphism_examples():
    y = mono([Fraction(3, 2)], order=O1).with_denom(2)
    assert apply_automorphism(y, [1]) == y
    assert apply_automorphism(y, [-1]) == -y
    u, v = mono([Fraction(1, 2)] * 2), mono([Fraction(3, 4)] * 2)
    y = (u + v).with_denom(4)
    assert apply_automorphism(y, [I, 1]) == -u - v.scale(I)


def test_conjugate_examples():
    y = mono([Fraction(3, 2)], order=O1)
    assert set(map(str, conjugates(y, 2))) == {str(y), str(-y)}
    u, v = mono([Fraction(1, 2)] * 2), mono([Fraction(3, 4)] * 2)
    got = {c.literal() for c in conjugates(u + v, 4)}
    want = {(u + v).literal(), (u - v).literal(), (-u - v.scale(I)).literal(), (-u + v.scale(I)).literal()}
    assert {parse_series(s).to_series(O2).literal() for s in got} == {
        parse_series(s).to_series(O2).literal() for s in want}
    assert conjugates(mono([1, 2]), 3) == [mono([1, 2])]


def test_truncated_conjugates_need_certification():
    y = FracSeries({(3,): 1}, 2, order=O1, precision=Fraction(5, 2))
    assert len(conjugates(y, 2)) == 2
    # x^2 alone, known below 5/2: a missing half-integer term could still split it
    z = FracSeries({(4,): 1}, 2, order=O1, precision=Fraction(5, 2))
    with pytest.raises(PrecisionExhausted):
        conjugates(z, 2)
    assert len(conjugates(z, 2, strict=False)) == 1


# -- properties -----------------------------------------------------------------

coeffs = st.one_of(
    st.integers(-3, 3).map(CycNum),
    st.tuples(st.integers(-2, 2), st.sampled_from([3, 4, 6])).map(
        lambda t: root_of_unity(1, t[1]) * t[0]),
)


@st.composite
def series2(draw):
    L = draw(st.sampled_from([1, 2, 3, 4]))
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 6)), coeffs, max_size=6))
    return FracSeries(terms, L, order=O2)


def _naive_product(a, b):
    """Term-by-term convolution over rational exponents."""
    out = {}
    for p, c in a.terms.items():
        for q, d in b.terms.items():
            k = tuple(Fraction(x, a.denom) + Fraction(y, b.denom) for x, y in zip(p, q))
            out[k] = out.get(k, CycNum(0)) + c * d
    return {k: v for k, v in out.items() if not v.is_zero()}


def _as_dict(s):
    return {tuple(Fraction(x, s.denom) for x in p): c for p, c in s.terms.items()}


@settings(max_examples=60, deadline=None)
@given(series2(), series2())
def test_product_matches_convolution(a, b):
    assert _as_dict(a * b) == _naive_product(a, b)


@settings(max_examples=40, deadline=None)
@given(series2(), series2(), series2())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=40, deadline=None)
@given(series2(), series2(), st.integers(1, 12))
def test_truncation_commutes_with_product(a, b, T):
    lhs = (a * b).truncated(T)
    rhs = (a.truncated(T) * b.truncated(T)).truncated(T)
    assert lhs.agrees_with(rhs)


@settings(max_examples=40, deadline=None)
@given(series2())
def test_literal_round_trip(a):
    assert parse_series(a.literal()).to_series(O2) == a


@settings(max_examples=40, deadline=None)
@given(series2(), st.sampled_from([2, 3]))
def test_denominator_round_trip(a, k):
    b = a.with_denom(a.denom * k)
    assert b == a and b.reduce_denominator() == a.reduce_denominator()
