"""scikit-learn front end: membership matrices in, converted matrices out.

Rows of ``X`` are the membership vectors of the elements of a universe, so a
covering with ``n`` sets is any ``(k, n)`` array whose rows lie in F.  The
transformer has no learned state besides the input width; ``fit`` only checks
that the training rows lie in the domain of the chosen map.

>>> import numpy as np
>>> t = FamilyTransformer(map="F3").fit(np.array([[1.0, 1.0, 0.0]]))
>>> t.transform(np.array([[1.0, 1.0, 0.0]])).round(12).tolist()
[[0.5, 0.5, 0.0]]
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from .category import CONVERSIONS, FuzzyFamily, convert, inverse_name
from .geometry import DEFAULT_TOL, check_tol
from .transforms import MapId


class FamilyTransformer(TransformerMixin, BaseEstimator):
    """Apply a named functor, object bijection or pointwise map row by row.

    Parameters
    ----------
    map : str
        A functor (``F``, ``G``, ``FN``, ``GN``, ``C_EPS``, ``D_EPS``), an object
        bijection (``F1`` ... ``G3``) or a registered map id (``PHI``, ``PSI1``, ...).
    eps : float, optional
        Homothety factor for ``C_EPS``, ``D_EPS`` and the ``*_EPS`` map ids.
    tol : float
        Absolute slack for every domain and codomain check.
    """

    def __init__(self, map="F3", eps=None, tol=DEFAULT_TOL):
        self.map = map
        self.eps = eps
        self.tol = tol

    def _family(self, X):
        return FuzzyFamily([str(i) for i in range(X.shape[0])], X)

    def fit(self, X, y=None):
        key = str(self.map).upper()
        if key not in CONVERSIONS and key not in MapId.__members__:
            raise ValueError(f"unknown map {self.map!r}")
        check_tol(self.tol)
        X = validate_data(self, X, dtype=np.float64, ensure_min_features=2)
        self.inverse_map_, self.inverse_eps_ = inverse_name(key, self.eps)
        convert(key, self._family(X), eps=self.eps, tol=self.tol)
        return self

    def transform(self, X):
        check_is_fitted(self, "inverse_map_")
        X = validate_data(self, X, dtype=np.float64, reset=False)
        return convert(self.map, self._family(X), eps=self.eps, tol=self.tol).membership.copy()

    def inverse_transform(self, X):
        check_is_fitted(self, "inverse_map_")
        X = validate_data(self, X, dtype=np.float64, reset=False)
        out = convert(self.inverse_map_, self._family(X), eps=self.inverse_eps_, tol=self.tol)
        return out.membership.copy()
