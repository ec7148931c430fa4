import random

import pytest
from helpers import F3, poly
from randroots import random_case

from freepoly.exceptions import NotFree
from freepoly.invariants import characteristic_data
from freepoly.pipeline import analyze, default_precision, locate_root


@pytest.mark.parametrize("seed", range(10))
def test_free_inputs_pass_the_separation_guard(seed):
    rng = random.Random(900 + seed)
    n, e = rng.choice([(2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (4, 2)])
    blow = e > 1 and rng.random() < 0.5
    f, y, ms = random_case(rng, n, e, blowup=blow)
    s = locate_root(f, default_precision(f), mode="blowup" if blow else "orthant")
    # the root found is a conjugate of the planted one, with the same exponents
    assert characteristic_data(s.root, n).m == tuple(tuple(m) for m in ms)


def test_separating_precision_raises_small_T():
    # T = 1 cannot show x1^(3/2); the guard lifts it past the separation bound
    s = locate_root(poly("y^2 - x1^3"), 1)
    assert s.precision > 1 and characteristic_data(s.root, 2).m == ((3,),)


@pytest.mark.parametrize("text", ["y^2 - x1*x2 - x2^3", "y^4 - 2*x1^3*y^2 + x1^6 - x1^7",
                                  "(y^2 - x1^3)*(y^2 - x1^5)"])
def test_non_free_inputs_are_rejected(text):
    with pytest.raises(NotFree):
        locate_root(poly(text), 8)


def test_report_routes():
    assert analyze(poly(F3)).extras["route"] == "quasi-ordinary"
    rep = analyze(poly("y^2 - (x2^3 + x1^5)"))
    assert rep.extras["route"] == "blowup" and rep.extras["shear"] == 1 and rep.passed
