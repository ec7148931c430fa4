from fractions import Fraction

import pytest
from helpers import F3, poly, series
from hypothesis import given, settings
from hypothesis import strategies as st

from freepoly.cones import Cone, standard_blowup_cone
from freepoly.cyclotomic import root_of_unity
from freepoly.exceptions import ParseError
from freepoly.parsing import (
    parse_cone,
    parse_expression,
    parse_input,
    parse_jobs,
    parse_rational,
    parse_series,
    split_jobs,
)
from freepoly.preparation import orthant_order
from freepoly.series import FracSeries
from freepoly.ypoly import SeriesPoly


def test_polynomial_examples():
    f = poly("y^2 - x1*x2")
    assert f.degree == 2 and f.is_monic() and f.dim == 2
    g = poly("y^2 - zeta(4)*x1")
    assert g.coeffs[0].coefficient((1,)) == -root_of_unity(1, 4)
    assert poly("(y - x1)^2") == poly("y^2 - 2*x1*y + x1^2")
    assert poly("y^2 - x1^3/2") == poly("y^2 - (1/2)*x1^3")
    assert poly("-(-y)") == poly("y")


def test_series_literal_matches_constructor():
    y = series("series(n=4; (2,2) -> 1; (3,3) -> 1)")
    assert y == FracSeries({(2, 2): 1, (3, 3): 1}, 4, order=orthant_order(2))
    y = series("series(n=2; (3) -> -1/2; prec=7/2)")
    assert y.precision == Fraction(7, 2) and y.coefficient((Fraction(3, 2),)) == Fraction(-1, 2)


def test_cone_literal_round_trip():
    for C in [standard_blowup_cone(2), standard_blowup_cone(3), Cone(((1, 0), (1, 3)))]:
        assert parse_cone(C.literal()) == C


def test_rational():
    assert parse_rational("7/2") == Fraction(7, 2)
    assert parse_rational("12") == 12


@pytest.mark.parametrize("text, line, col", [
    ("y^2 - x1*", 1, 10),
    ("y^2 + + ", 1, 9),
    ("y^2 - w1", 1, 7),
    ("y^(1/0)", 1, 7),
])
def test_errors_carry_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"{line}:{col}:")


def test_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_expression("y^2 - ")
    assert "y" in info.value.expected and "integer" in info.value.expected


def test_series_errors():
    with pytest.raises(ParseError):
        parse_series("series(n=2; (1,2) -> 1; (3) -> 1)")
    with pytest.raises(ParseError):
        parse_series("series(n=2; (1) -> x1)")
    with pytest.raises(ParseError):
        parse_series("series(n=0)")


def test_job_parsing():
    job = parse_input("y^2 - x1^3  # cusp\nseries(n=2; (3) -> 1)\nprecision = 9\nvalue = (3)\nvalue = (5)", 4)
    assert job.line == 4
    assert job.series is not None and job.options["precision"] == "9"
    assert job.options["value"] == ["(3)", "(5)"]
    with pytest.raises(ParseError) as info:
        parse_input("y^2 - x1\ny - x2", 10)
    assert info.value.line == 11


def test_split_jobs_keeps_line_numbers():
    text = "# batch\ny^2 - x1^3\n---\n\n" + F3 + "\n---\n# empty job\n---\ny - x1\n"
    jobs = split_jobs(text)
    assert [line for _, line in jobs] == [1, 4, 9]
    assert len(parse_jobs(text)) == 3


coeff = st.tuples(st.integers(-9, 9), st.integers(1, 4)).map(lambda t: Fraction(*t))


@st.composite
def polys(draw):
    e = draw(st.integers(1, 3))
    order = orthant_order(e)
    deg = draw(st.integers(1, 4))
    coeffs = []
    for _ in range(deg):
        terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 5)] * e), coeff, max_size=4))
        coeffs.append(FracSeries(terms, order=order))
    coeffs.append(FracSeries({(0,) * e: 1}, order=order))
    return SeriesPoly(coeffs, order=order)


@settings(max_examples=60, deadline=None)
@given(polys())
def test_emit_parse_round_trip(f):
    back = parse_expression(f.to_expr()).to_seriespoly(f.dim, f.order)
    assert back == f


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.dictionaries(st.tuples(st.integers(0, 9), st.integers(0, 9)),
                                          coeff, max_size=5))
def test_series_literal_round_trip(n, terms):
    y = FracSeries(terms, n, order=orthant_order(2))
    assert parse_series(y.literal()).to_series(y.order) == y
