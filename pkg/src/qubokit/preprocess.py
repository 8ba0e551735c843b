"""Encoding and normalization, as estimators and as dataset-level steps.

The estimators follow the usual fit/transform protocol so they compose with
pipeline tooling; the module-level functions adapt them to
:class:`~qubokit.dataset.Dataset` objects.
"""

from __future__ import annotations

import warnings

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from ._validation import check_2d_numeric
from .dataset import CATEGORICAL, NUMERIC, Dataset
from .errors import DataError


def _first_appearance_codes(values) -> tuple[np.ndarray, list]:
    """Ordinal codes in order of first appearance, not lexicographic order."""
    categories: list = []
    index: dict = {}
    codes = np.empty(len(values), dtype=float)
    for pos, value in enumerate(values):
        if value not in index:
            index[value] = len(categories)
            categories.append(value)
        codes[pos] = index[value]
    return codes, categories


class CategoryEncoder(BaseEstimator, TransformerMixin):
    """Ordinal encoder assigning codes by order of first appearance.

    Categories seen while fitting map to 0, 1, 2, ... in the order the rows
    mention them, which keeps the encoding reproducible for a fixed input
    file without imposing an alphabet on unordered labels.
    """

    def fit(self, X, y=None):
        X = self._check(X)
        self.categories_ = []
        self._index_ = []
        for col in range(X.shape[1]):
            _, cats = _first_appearance_codes(X[:, col])
            self.categories_.append(cats)
            self._index_.append({c: i for i, c in enumerate(cats)})
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        if not hasattr(self, "categories_"):
            raise NotFittedError("CategoryEncoder is not fitted yet")
        X = self._check(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        out = np.empty(X.shape, dtype=float)
        for col in range(X.shape[1]):
            index = self._index_[col]
            for row in range(X.shape[0]):
                value = X[row, col]
                if value not in index:
                    raise DataError(f"column {col}: unseen category {value!r}")
                out[row, col] = index[value]
        return out

    @staticmethod
    def _check(X) -> np.ndarray:
        arr = np.asarray(X, dtype=object)
        if arr.ndim != 2:
            raise ValueError(f"X must be two-dimensional, got shape {arr.shape}")
        return arr


class Standardizer(BaseEstimator, TransformerMixin):
    """Center to mean 0 and scale to unit standard deviation (population sd).

    A constant column cannot be scaled; it is centered only, and fit issues
    a warning instead of failing.
    """

    def fit(self, X, y=None):
        X = check_2d_numeric(X)
        self.mean_ = X.mean(axis=0)
        scale = X.std(axis=0)
        constant = scale == 0.0
        if np.any(constant):
            warnings.warn(
                f"{int(constant.sum())} constant column(s) left unscaled", stacklevel=2
            )
            scale = np.where(constant, 1.0, scale)
        self.scale_ = scale
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        if not hasattr(self, "mean_"):
            raise NotFittedError("Standardizer is not fitted yet")
        X = check_2d_numeric(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        return (X - self.mean_) / self.scale_


def encode_categorical(ds: Dataset) -> Dataset:
    """Replace every categorical column with first-appearance ordinal codes."""
    encoded, _ = encode_categorical_with_maps(ds)
    return encoded


def encode_categorical_with_maps(ds: Dataset) -> tuple[Dataset, dict]:
    """As :func:`encode_categorical`, also returning {column: categories}."""
    columns = []
    mappings: dict[str, list] = {}
    for name, kind, col in zip(ds.names, ds.kinds, ds.columns):
        if kind == CATEGORICAL:
            codes, categories = _first_appearance_codes(col)
            columns.append(codes)
            mappings[name] = categories
        else:
            columns.append(col)
    kinds = tuple(NUMERIC for _ in ds.kinds)
    return Dataset(ds.names, kinds, tuple(columns), ds.target), mappings


def normalize(ds: Dataset) -> Dataset:
    """Standardize every feature column; the target is left untouched."""
    scaler = Standardizer()
    matrix = scaler.fit_transform(ds.feature_matrix())
    columns = tuple(matrix[:, i] for i in range(ds.n_features))
    return Dataset(ds.names, ds.kinds, columns, ds.target)
