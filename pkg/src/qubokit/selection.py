"""Correlation-driven QUBO construction and the feature-selector estimator.

The objective trades predictive value against redundancy: each feature's
rank correlation with the target enters as a (negative) linear reward
scaled by ``alpha``, and each pairwise feature correlation enters as a
quadratic penalty scaled by ``1 - alpha``.  Minimizing the resulting QUBO
picks a subset that is informative but not mutually redundant.  Larger
``alpha`` favors keeping more features; the drift is monotone in practice,
though cunning correlation structures can make the optimal subset size dip
as ``alpha`` grows.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from ._validation import as_binary_vector, check_2d_numeric
from .constraints import cardinality_equals, suggest_penalty
from .correlation import CorrelationProfile, profile_from_arrays
from .model import QuboModel
from .solvers import SolveParams, solve

DEFAULT_ALPHA = 0.5


def build_qubo(profile: CorrelationProfile, alpha: float = DEFAULT_ALPHA, use_absolute: bool = True) -> QuboModel:
    """Build the selection objective from a correlation profile.

    One binary variable per feature; linear coefficients are
    ``-alpha * |target_corr|`` and the upper triangle holds
    ``(1 - alpha) * |feature_corr|``.  With ``use_absolute=False`` the signed
    correlations are used as-is, so negatively correlated pairs lower the
    cost of keeping both.
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    target = profile.target_corr
    features = profile.feature_corr
    if use_absolute:
        target = np.abs(target)
        features = np.abs(features)
    linear = -alpha * target
    quadratic = (1.0 - alpha) * np.triu(features, 1)
    return QuboModel(0.0, linear, quadratic)


class QuboFeatureSelector(BaseEstimator, TransformerMixin):
    """Select feature subsets by minimizing a correlation QUBO.

    Parameters mirror the pipeline configuration: the objective weights
    (``alpha``, ``use_absolute``), an optional exact-cardinality constraint
    (``cardinality`` with penalty weight ``penalty``, auto-derived when
    omitted), the solver name as registered in
    :mod:`qubokit.solvers`, and the solver knobs.

    Attributes set by :meth:`fit`: ``profile_``, ``model_``, ``result_``,
    ``support_`` (boolean mask) and ``n_features_in_``.
    """

    def __init__(
        self,
        alpha: float = DEFAULT_ALPHA,
        use_absolute: bool = True,
        cardinality: int | None = None,
        penalty: float | None = None,
        solver: str = "simulated_annealing",
        seed: int = 0,
        sweeps: int = 1000,
        restarts: int = 10,
        t_initial: float | None = None,
        t_final: float = 1e-3,
    ):
        self.alpha = alpha
        self.use_absolute = use_absolute
        self.cardinality = cardinality
        self.penalty = penalty
        self.solver = solver
        self.seed = seed
        self.sweeps = sweeps
        self.restarts = restarts
        self.t_initial = t_initial
        self.t_final = t_final

    def fit(self, X, y):
        X = check_2d_numeric(X)
        y = as_binary_vector(y, X.shape[0], "y")
        self.profile_ = profile_from_arrays(X, y)
        model = build_qubo(self.profile_, self.alpha, self.use_absolute)
        if self.cardinality is not None:
            weight = self.penalty if self.penalty is not None else suggest_penalty(model)
            model = cardinality_equals(model, self.cardinality, weight)
        self.model_ = model
        params = SolveParams(
            seed=self.seed,
            sweeps=self.sweeps,
            restarts=self.restarts,
            t_initial=self.t_initial,
            t_final=self.t_final,
        )
        self.result_ = solve(model, self.solver, params)
        self.support_ = self.result_.best.astype(bool)
        self.n_features_in_ = X.shape[1]
        return self

    def _check_fitted(self) -> None:
        if not hasattr(self, "support_"):
            raise NotFittedError("QuboFeatureSelector is not fitted yet")

    def get_support(self, indices: bool = False):
        self._check_fitted()
        return np.flatnonzero(self.support_) if indices else self.support_.copy()

    def transform(self, X):
        self._check_fitted()
        X = check_2d_numeric(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        return X[:, self.support_]
