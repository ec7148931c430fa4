"""Small builders shared by the test modules."""

from freepoly.cli import resolve_job
from freepoly.cones import compatible_order, standard_blowup_cone
from freepoly.parsing import parse_expression, parse_input, parse_series
from freepoly.preparation import orthant_order

F3 = "y^4 - 2*x1*x2*y^2 - 4*x1^2*x2^2*y + x1^2*x2^2 - x1^3*x2^3"


def poly(text, e=None, cone_mode="orthant"):
    raw = parse_expression(text)
    e = e or max(1, raw.max_index())
    if cone_mode == "blowup" and e > 1:
        C = standard_blowup_cone(e)
        return raw.to_seriespoly(e, compatible_order(C), C)
    return raw.to_seriespoly(e, orthant_order(e))


def series(text, cone_mode="orthant"):
    raw = parse_series(text)
    e = raw.dim()
    if cone_mode == "blowup" and e > 1:
        C = standard_blowup_cone(e)
        return raw.to_series(compatible_order(C), C)
    return raw.to_series(orthant_order(e))


def job(text, cone_mode=None):
    return resolve_job(parse_input(text), cone_mode)


def like(f, text):
    """Parse text as a polynomial in the same order and cone as f."""
    return parse_expression(text).to_seriespoly(f.dim, f.order, f.cone)


def series_like(f, text):
    return parse_series(text).to_series(f.order, f.cone)
