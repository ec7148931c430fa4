"""scikit-learn style wrapper: fit on a polynomial, transform polynomials into their values."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .exceptions import FreePolyError
from .invariants import characteristic_data, gcd_sequences, order_pair
from .parsing import parse_expression, parse_input
from .pipeline import _analyze
from .preparation import orthant_order, shear, to_blowup_cone
from .ypoly import SeriesPoly

__all__ = ["FreePolynomialAnalyzer", "check_polynomial", "check_cone_mode", "check_precision"]

CONE_MODES = ("orthant", "blowup", "custom")


def check_cone_mode(mode) -> str:
    if mode not in CONE_MODES:
        raise ValueError(f"cone must be one of {CONE_MODES}, got {mode!r}")
    return mode


def check_precision(precision):
    if precision is None:
        return None
    T = Fraction(precision)
    if T <= 0:
        raise ValueError(f"precision must be positive, got {precision!r}")
    return T


def check_polynomial(f, *, cone_mode: str = "orthant") -> tuple[SeriesPoly, object]:
    """Accept a SeriesPoly or job text; returns (f, root or None)."""
    if isinstance(f, SeriesPoly):
        if f.degree < 1 or not f.is_monic():
            raise ValueError("expected a monic polynomial of positive degree in y")
        return f, None
    if isinstance(f, str):
        from .cli import InputError, resolve_job

        try:
            poly, root, _ = resolve_job(parse_input(f), cone_mode)
        except InputError as exc:
            raise ValueError(str(exc)) from None
        return poly, root
    raise TypeError(f"expected a SeriesPoly or a string, got {type(f).__name__}")


class FreePolynomialAnalyzer(BaseEstimator, TransformerMixin):
    """Learns the invariants of one free polynomial f.

    ``transform`` maps a sequence of polynomials g to the rows O(f, g)
    (an object array of exact rationals, one column per variable).
    """

    def __init__(self, cone="orthant", precision=None):
        self.cone = cone
        self.precision = precision

    def fit(self, X, y=None):
        mode = check_cone_mode(self.cone)
        T = check_precision(self.precision)
        f, root = check_polynomial(X, cone_mode=mode)
        setting, report = _analyze(f, T, mode, root, 4)
        self.setting_ = setting
        self.report_ = report
        self.characteristic_exponents_ = characteristic_data(setting.root, setting.n)
        self.sequences_ = gcd_sequences(setting.n, setting.f.dim, self.characteristic_exponents_)
        self.semigroup_generators_ = [tuple(v) for v in report.generators]
        self.n_features_in_ = setting.f.dim
        return self

    def _lift(self, g) -> SeriesPoly:
        s = self.setting_
        if isinstance(g, str):
            raw = parse_expression(g)
            if s.shear is None:
                g = raw.to_seriespoly(s.f.dim, s.f.order, s.f.cone)
            else:
                # the fitted f was sheared and moved into the blowup cone; follow it
                g = to_blowup_cone(shear(raw.to_seriespoly(s.f.dim, orthant_order(s.f.dim)), s.shear))
        if not isinstance(g, SeriesPoly):
            raise TypeError(f"expected a SeriesPoly or a string, got {type(g).__name__}")
        if g.order != s.f.order:
            raise ValueError("g uses a different monomial order than the fitted polynomial")
        return g

    def transform(self, X):
        check_is_fitted(self, "setting_")
        s = self.setting_
        rows = []
        for g in X:
            try:
                rows.append(list(order_pair(s.f, s.root, self._lift(g), n=s.n)))
            except FreePolyError as exc:
                raise ValueError(f"O(f, g) undefined for {g}: {exc}") from exc
        out = np.empty((len(rows), s.f.dim), dtype=object)
        for i, row in enumerate(rows):
            out[i, :] = row
        return out

    def fit_transform(self, X, y=None, values=()):
        return self.fit(X).transform(values)
