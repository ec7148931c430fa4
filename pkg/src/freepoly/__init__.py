"""Exact invariants of free polynomials over power series with exponents in a line-free cone."""

from .cones import Cone, OrderSpec, compatible_order, cone_contains, is_line_free, orthant, standard_blowup_cone
from .cyclotomic import CycNum, root_of_unity
from .exceptions import *  # noqa: F401,F403
from .invariants import (
    CharData,
    GaloisCounts,
    Representation,
    SemigroupDesc,
    SequencePack,
    characteristic_data,
    expansion_order,
    galois_counts,
    gcd_sequences,
    order_pair,
    pseudo_root,
    semigroup_generators,
    semigroup_representation,
)
from .parsing import parse_cone, parse_expression, parse_input, parse_series
from .pipeline import analyze, locate_root
from .preparation import (
    blowup,
    free_approximate_root_check,
    free_certificate,
    is_quasi_ordinary,
    prepare_shear,
    qo_root_expand,
    unblow_series,
)
from .report import InvariantReport, emit_report
from .series import FracSeries, conjugates
from .ypoly import SeriesPoly, approximate_root, minimal_polynomial, resultant_y

__version__ = "0.1.0"
