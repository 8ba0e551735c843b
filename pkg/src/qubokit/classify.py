"""Train/test splitting, a gradient-descent logistic classifier, metrics.

The classifier is intentionally plain: zero-initialized weights, full-batch
gradient descent on the mean cross-entropy with optional L2 on the weights
(never the bias).  Keeping the loss and gradient as standalone functions
lets the analytic gradient be checked against finite differences without
touching the estimator.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import NotFittedError

from ._validation import as_binary_vector, check_2d_numeric
from .dataset import Dataset
from .errors import DataError


@dataclass(frozen=True, eq=False)
class Split:
    """Row indices of one train/test partition, with its provenance."""

    train_indices: np.ndarray
    test_indices: np.ndarray
    ratio: float
    seed: int

    def __post_init__(self) -> None:
        train = np.asarray(self.train_indices, dtype=np.int64)
        test = np.asarray(self.test_indices, dtype=np.int64)
        if np.intersect1d(train, test).size:
            raise ValueError("train and test indices overlap")
        train.setflags(write=False)
        test.setflags(write=False)
        object.__setattr__(self, "train_indices", train)
        object.__setattr__(self, "test_indices", test)


def train_test_split(ds: Dataset, ratio: float = 0.7, seed: int = 0) -> Split:
    """Stratified split: class proportions carry over to both partitions.

    The train partition holds ``round(ratio * rows)`` rows; per-class counts
    are rounded and then adjusted so the total always lands exactly there.
    Identical inputs and seed give identical index arrays.
    """
    ratio = float(ratio)
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"ratio must be strictly between 0 and 1, got {ratio}")
    rows = ds.rows
    n_train = int(round(ratio * rows))
    if n_train == 0 or n_train == rows:
        raise ValueError(f"ratio {ratio} leaves an empty partition for {rows} rows")

    ones = np.flatnonzero(ds.target == 1)
    zeros = np.flatnonzero(ds.target == 0)
    take_ones = int(round(ratio * ones.size))
    take_ones = min(max(take_ones, n_train - zeros.size), min(ones.size, n_train))

    rng = np.random.default_rng(seed)
    ones = rng.permutation(ones)
    zeros = rng.permutation(zeros)
    train = np.sort(np.concatenate([ones[:take_ones], zeros[: n_train - take_ones]]))
    test = np.setdiff1d(np.arange(rows), train)
    return Split(train, test, ratio, int(seed))


def sigmoid(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def nll_loss(weights: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray, l2: float = 0.0) -> float:
    """Mean cross-entropy plus 0.5 * l2 * ||weights||^2, evaluated stably."""
    z = X @ weights + bias
    return float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * (weights @ weights))


def nll_gradient(weights: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray, l2: float = 0.0) -> tuple[np.ndarray, float]:
    """Analytic gradient of :func:`nll_loss` in (weights, bias)."""
    residual = sigmoid(X @ weights + bias) - y
    grad_w = X.T @ residual / X.shape[0] + l2 * weights
    grad_b = float(residual.mean())
    return grad_w, grad_b


class LogisticClassifier(BaseEstimator, ClassifierMixin):
    """Binary logistic regression trained by full-batch gradient descent.

    Deterministic: zero initialization and a fixed iteration count, no
    randomness anywhere.  Probabilities at exactly 0.5 go to class 1.
    """

    def __init__(self, learning_rate: float = 0.1, n_iterations: int = 500, l2: float = 0.0):
        self.learning_rate = learning_rate
        self.n_iterations = n_iterations
        self.l2 = l2

    def fit(self, X, y):
        X = check_2d_numeric(X)
        y = as_binary_vector(y, X.shape[0], "y").astype(float)
        if self.learning_rate <= 0.0:
            raise ValueError("learning_rate must be positive")
        if self.n_iterations < 1:
            raise ValueError("n_iterations must be at least 1")
        if self.l2 < 0.0:
            raise ValueError("l2 must be non-negative")
        if np.unique(y).size < 2:
            raise DataError("training rows contain a single class")
        weights = np.zeros(X.shape[1])
        bias = 0.0
        for _ in range(self.n_iterations):
            grad_w, grad_b = nll_gradient(weights, bias, X, y, self.l2)
            weights -= self.learning_rate * grad_w
            bias -= self.learning_rate * grad_b
        self.weights_ = weights
        self.bias_ = bias
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return self

    def _check_fitted(self) -> None:
        if not hasattr(self, "weights_"):
            raise NotFittedError("LogisticClassifier is not fitted yet")

    def decision_function(self, X) -> np.ndarray:
        self._check_fitted()
        X = check_2d_numeric(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        return X @ self.weights_ + self.bias_

    def predict_proba(self, X) -> np.ndarray:
        p = sigmoid(self.decision_function(X))
        return np.column_stack([1.0 - p, p])

    def predict(self, X) -> np.ndarray:
        p = sigmoid(self.decision_function(X))
        return (p >= 0.5).astype(np.int64)


@dataclass(frozen=True, eq=False)
class EvalReport:
    """Test-set metrics for one feature mask.

    ``confusion`` is [[tn, fp], [fn, tp]] with class 1 positive; the scalar
    metrics are derived from it, with 0-valued denominators reported as 0.
    """

    feature_mask: np.ndarray
    confusion: np.ndarray
    precision: float
    recall: float
    accuracy: float

    def to_dict(self) -> dict:
        return {
            "feature_mask": self.feature_mask.astype(int).tolist(),
            "confusion": self.confusion.tolist(),
            "precision": self.precision,
            "recall": self.recall,
            "accuracy": self.accuracy,
        }


def _safe_ratio(num: int, denom: int, name: str) -> float:
    if denom == 0:
        warnings.warn(f"{name} denominator is zero, reporting 0", stacklevel=3)
        return 0.0
    return num / denom


def confusion_metrics(y_true: np.ndarray, y_pred: np.ndarray) -> tuple[np.ndarray, float, float, float]:
    y_true = as_binary_vector(y_true, name="y_true")
    y_pred = as_binary_vector(y_pred, y_true.size, name="y_pred")
    tp = int(np.sum((y_true == 1) & (y_pred == 1)))
    tn = int(np.sum((y_true == 0) & (y_pred == 0)))
    fp = int(np.sum((y_true == 0) & (y_pred == 1)))
    fn = int(np.sum((y_true == 1) & (y_pred == 0)))
    confusion = np.array([[tn, fp], [fn, tp]])
    precision = _safe_ratio(tp, tp + fp, "precision")
    recall = _safe_ratio(tp, tp + fn, "recall")
    accuracy = _safe_ratio(tp + tn, y_true.size, "accuracy")
    return confusion, precision, recall, accuracy


def _masked_matrix(ds: Dataset, mask) -> tuple[np.ndarray, np.ndarray]:
    mask = np.asarray(mask, dtype=bool)
    if mask.ndim != 1 or mask.size != ds.n_features:
        raise ValueError(f"mask must have one entry per feature ({ds.n_features})")
    if not mask.any():
        raise DataError("feature mask selects no columns")
    return ds.feature_matrix()[:, mask], ds.target


def train_logistic(ds: Dataset, split: Split, mask, learning_rate: float = 0.1, n_iterations: int = 500, l2: float = 0.0) -> LogisticClassifier:
    """Fit the classifier on the masked training rows."""
    X, y = _masked_matrix(ds, mask)
    clf = LogisticClassifier(learning_rate, n_iterations, l2)
    return clf.fit(X[split.train_indices], y[split.train_indices])


def evaluate(clf: LogisticClassifier, ds: Dataset, split: Split, mask) -> EvalReport:
    """Score a fitted classifier on the test rows only."""
    X, y = _masked_matrix(ds, mask)
    y_pred = clf.predict(X[split.test_indices])
    confusion, precision, recall, accuracy = confusion_metrics(y[split.test_indices], y_pred)
    return EvalReport(
        feature_mask=np.asarray(mask, dtype=bool),
        confusion=confusion,
        precision=precision,
        recall=recall,
        accuracy=accuracy,
    )


@dataclass(frozen=True, eq=False)
class FeatureSetComparison:
    """Per-mask reports plus metric deltas against the all-features baseline."""

    baseline: EvalReport
    reports: tuple[EvalReport, ...]
    deltas: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "baseline": self.baseline.to_dict(),
            "reports": [r.to_dict() for r in self.reports],
            "deltas": [dict(d) for d in self.deltas],
        }


def compare_feature_sets(ds: Dataset, split: Split, masks, learning_rate: float = 0.1, n_iterations: int = 500, l2: float = 0.0) -> FeatureSetComparison:
    """Train and score one classifier per mask under a shared split.

    The all-ones mask is always evaluated as the baseline; each mask's
    deltas are its metrics minus the baseline's.  Masks are independent of
    each other, so evaluation order cannot change any report.
    """

    def run(mask) -> EvalReport:
        clf = train_logistic(ds, split, mask, learning_rate, n_iterations, l2)
        return evaluate(clf, ds, split, mask)

    baseline = run(np.ones(ds.n_features, dtype=bool))
    reports = tuple(run(mask) for mask in masks)
    deltas = tuple(
        {
            "accuracy": report.accuracy - baseline.accuracy,
            "precision": report.precision - baseline.precision,
            "recall": report.recall - baseline.recall,
        }
        for report in reports
    )
    return FeatureSetComparison(baseline, reports, deltas)
