"""Estimator-style wrappers: ``fit`` a convex body, then evaluate on batches.

``fit`` accepts either a body object or a real ``(k, n)`` point cloud, whose
convex hull becomes the body.  Inputs to ``predict``/``transform`` are complex
``(m, n)`` arrays; rows are independent.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .errors import ConvergenceError, InvalidArgumentError
from .extremal import solve_extremal
from .geometry import ConvexBody, VPolytope
from .robin import robin_value
from .vk import vk_eval


def check_body(body):
    """Return a body: pass one through, or take the hull of a real point cloud."""
    if isinstance(body, ConvexBody):
        return body
    X = np.asarray(body, dtype=float)
    if X.ndim != 2:
        raise InvalidArgumentError("expected a ConvexBody or a (k, n) array of points")
    return VPolytope(X)


def check_complex_array(Z, n_features=None, allow_zero_rows=True):
    """Validate a complex ``(m, n)`` batch; a single vector becomes one row."""
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim == 1:
        Z = Z[None, :]
    if Z.ndim != 2 or Z.shape[0] == 0:
        raise InvalidArgumentError(f"expected a non-empty 2-D array, got shape {Z.shape}")
    if not np.all(np.isfinite(Z)):
        raise InvalidArgumentError("input contains NaN or infinity")
    if n_features is not None and Z.shape[1] != n_features:
        raise InvalidArgumentError(f"expected {n_features} columns, got {Z.shape[1]}")
    if not allow_zero_rows and np.any(~Z.any(axis=1)):
        raise InvalidArgumentError("zero rows are not allowed")
    return Z


class _BodyEstimator(BaseEstimator):

    def fit(self, X, y=None):
        self.body_ = check_body(X)
        self.n_features_in_ = self.body_.dim
        return self


class ExtremalFunction(_BodyEstimator):
    """V_K on batches of points.

    ``predict`` returns the values; ``transform`` returns leaf coordinates as
    a complex ``(m, n + 1)`` array: the canonical direction followed by
    ``zeta`` (NaN for points of K).  Non-convergent rows raise unless
    ``errors="nan"``.
    """

    def __init__(self, tol=1e-10, n_starts=8, errors="raise"):
        self.tol = tol
        self.n_starts = n_starts
        self.errors = errors

    def _eval(self, Z):
        check_is_fitted(self, "body_")
        Z = check_complex_array(Z, self.n_features_in_)
        out = []
        for z in Z:
            try:
                out.append(vk_eval(self.body_, z, tol=self.tol, n_starts=self.n_starts))
            except ConvergenceError:
                if self.errors != "nan":
                    raise
                out.append(None)
        return out

    def predict(self, Z):
        return np.array([np.nan if r is None else r.value for r in self._eval(Z)])

    def transform(self, Z):
        res = self._eval(Z)
        out = np.full((len(res), self.n_features_in_ + 1), np.nan + 0j)
        for i, r in enumerate(res):
            if r is not None and r.leaf is not None:
                out[i, :-1] = r.leaf.direction.canonical
                out[i, -1] = r.leaf.zeta
        return out

    def score(self, Z, y):
        """Negative largest absolute deviation from reference values ``y``."""
        return -float(np.max(np.abs(self.predict(Z) - np.asarray(y, dtype=float))))


class RobinFunction(_BodyEstimator):
    """Robin function ``rho_K`` on batches of nonzero directions.

    ``transform`` gives the extremal data ``(rho, center...)`` per row.
    """

    def predict(self, V):
        check_is_fitted(self, "body_")
        V = check_complex_array(V, self.n_features_in_, allow_zero_rows=False)
        return np.array([robin_value(self.body_, v) for v in V])

    def transform(self, V):
        check_is_fitted(self, "body_")
        V = check_complex_array(V, self.n_features_in_, allow_zero_rows=False)
        rows = []
        for v in V:
            d = solve_extremal(self.body_, v)
            rows.append(np.r_[d.rho, d.center])
        return np.array(rows)

    def indicatrix_contains(self, V, tol=1e-8):
        V = check_complex_array(V, getattr(self, "n_features_in_", None))
        out = np.ones(len(V), dtype=bool)
        nz = V.any(axis=1)
        if nz.any():
            out[nz] = self.predict(V[nz]) <= tol
        return out
