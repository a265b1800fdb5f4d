"""A scikit-learn style facade for finite sets of reduced rational points.

``SchemeAnalyzer().fit(points)`` builds the reduced scheme through the given
affine points (the chart ``X0 = 1``), classifies it, and exposes the results
as fitted attributes.  ``transform`` evaluates the normalized separators of
the fitted points at query points, so a fitted point maps to a unit vector.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .fields import ModInt, field_from_spec
from .scheme import build_scheme
from .structure import Analysis, classify, separators

__all__ = ["SchemeAnalyzer", "check_points"]


def _exact(value, field):
    if isinstance(value, (bool, np.bool_)):
        raise ValueError("booleans are not coordinates")
    if isinstance(value, numbers.Integral):
        return field.convert(int(value))
    if isinstance(value, (Fraction, ModInt, str)):
        return field.convert(value)
    if isinstance(value, numbers.Real):
        if float(value).is_integer():
            return field.convert(int(value))
        raise ValueError(f"inexact coordinate {value!r}; pass a string such as '3/4'")
    raise ValueError(f"unsupported coordinate {value!r}")


def check_points(X, field="Q", n_features=None, unique=True):
    """Validate a 2-d array-like of affine coordinates and convert it exactly.

    Returns a list of tuples of field elements.  With ``unique`` set, rows
    must be distinct.
    """
    field = field_from_spec(field) if not hasattr(field, "convert") else field
    if isinstance(X, np.ndarray):
        rows = X.tolist()
    else:
        try:
            rows = [list(r) for r in X]
        except TypeError:
            raise ValueError("expected a 2-d array-like of coordinates") from None
    if not rows:
        raise ValueError("need at least one point")
    width = len(rows[0])
    if width < 1 or any(len(r) != width for r in rows):
        raise ValueError("all points need the same positive number of coordinates")
    if n_features is not None and width != n_features:
        raise ValueError(f"expected {n_features} coordinates per point, got {width}")
    pts = [tuple(_exact(a, field) for a in r) for r in rows]
    seen = set()
    for k, p in enumerate(pts if unique else ()):
        if p in seen:
            raise ValueError(f"point {k} is a duplicate")
        seen.add(p)
    return pts


class SchemeAnalyzer(TransformerMixin, BaseEstimator):
    """Classify the reduced scheme through a set of affine points.

    Parameters
    ----------
    field : "Q" or {"Fp": p}
        Coefficient field.
    max_degree : int or None
        Optional cap for the graded computations.
    """

    def __init__(self, field="Q", max_degree=None):
        self.field = field
        self.max_degree = max_degree

    def fit(self, X, y=None):
        K = field_from_spec(self.field)
        pts = check_points(X, K)
        n = len(pts[0])
        comps = [{"point": [K.one, *p]} for p in pts]
        self.scheme_ = build_scheme(K, n, components=comps, max_degree=self.max_degree)
        an = Analysis(self.scheme_, cap=self.max_degree)
        self.report_ = classify(self.scheme_, an)
        H = self.scheme_.hilbert
        self.hilbert_ = [H(i) for i in range(H.r_X + 2)]
        self.regularity_index_ = H.r_X
        self.kaehler_hf_ = an.kaehler.hf_list(an.kaehler.stable_from + 1)
        self.noether_hf_ = an.noether.hf_list(an.noether.stable_from + 1)
        self.point_degrees_ = list(self.report_.point_degrees)
        self.n_features_in_ = n
        self.points_ = pts
        self._separators = [separators(self.scheme_, j)["full"][0] for j in range(len(pts))]
        return self

    def transform(self, X):
        """Matrix of separator values: entry ``(q, j)`` is ``f_j(q) / f_j(p_j)``."""
        check_is_fitted(self, "scheme_")
        K = self.scheme_.field
        query = check_points(X, K, self.n_features_in_, unique=False)
        out = np.empty((len(query), len(self.points_)), dtype=object)
        for j, f in enumerate(self._separators):
            scale = f.evaluate((K.one, *self.points_[j]))
            for q, p in enumerate(query):
                out[q, j] = f.evaluate((K.one, *p)) / scale
        return out

    def predict(self, X):
        """Index of the fitted point each query point coincides with, else -1."""
        check_is_fitted(self, "scheme_")
        index = {p: j for j, p in enumerate(self.points_)}
        return np.array([index.get(p, -1) for p in check_points(X, self.scheme_.field, self.n_features_in_, unique=False)])
