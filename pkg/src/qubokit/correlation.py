"""Rank statistics: tie-averaged ranks, rank correlation, dataset profiles."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ._validation import as_float_matrix, as_float_vector
from .model import _freeze


def average_ranks(values) -> np.ndarray:
    """1-based ranks; runs of equal values share the mean of their positions."""
    arr = as_float_vector(values, "values")
    order = np.argsort(arr, kind="stable")
    ranks = np.empty(arr.size, dtype=float)
    start = 0
    while start < arr.size:
        stop = start
        while stop + 1 < arr.size and arr[order[stop + 1]] == arr[order[start]]:
            stop += 1
        # positions start+1 .. stop+1 share one rank
        ranks[order[start : stop + 1]] = (start + stop + 2) / 2.0
        start = stop + 1
    return ranks


def _rank_correlation(rx: np.ndarray, ry: np.ndarray) -> float:
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    denom = float(np.sqrt((dx @ dx) * (dy @ dy)))
    if denom == 0.0:
        warnings.warn("rank correlation of a constant vector is defined as 0", stacklevel=3)
        return 0.0
    return float(np.clip((dx @ dy) / denom, -1.0, 1.0))


def spearman(x, y) -> float:
    """Rank correlation of two equal-length samples, in [-1, 1].

    Ties receive average ranks; a constant input has zero rank variance and
    yields 0 with a warning rather than an error.
    """
    xv = as_float_vector(x, "x")
    yv = as_float_vector(y, "y")
    if xv.size != yv.size:
        raise ValueError(f"length mismatch: {xv.size} vs {yv.size}")
    if xv.size < 2:
        raise ValueError("rank correlation needs at least two observations")
    return _rank_correlation(average_ranks(xv), average_ranks(yv))


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    """Rank correlations of every feature with the target and with each other.

    ``feature_corr`` is symmetric with unit diagonal; both arrays hold values
    in [-1, 1].
    """

    target_corr: np.ndarray
    feature_corr: np.ndarray

    def __post_init__(self) -> None:
        target = as_float_vector(self.target_corr, "target_corr")
        features = as_float_matrix(self.feature_corr, "feature_corr")
        if features.shape != (target.size, target.size):
            raise ValueError(
                f"feature_corr must be {target.size}x{target.size}, got {features.shape}"
            )
        object.__setattr__(self, "target_corr", _freeze(target))
        object.__setattr__(self, "feature_corr", _freeze(features))

    @property
    def n_features(self) -> int:
        return self.target_corr.size

    def to_dict(self) -> dict:
        return {
            "target_corr": self.target_corr.tolist(),
            "feature_corr": self.feature_corr.tolist(),
        }


def profile_from_arrays(X, y) -> CorrelationProfile:
    """Profile a numeric feature matrix against a target vector.

    Ranks are computed once per column; every pairwise value then reuses
    them, which matches calling :func:`spearman` on the raw columns.  The
    diagonal is pinned to exactly 1.  Pair computations are independent of
    each other, so evaluation order cannot change the result.
    """
    mat = as_float_matrix(X, "X")
    yv = as_float_vector(y, "y")
    if mat.shape[0] != yv.size:
        raise ValueError(f"X has {mat.shape[0]} rows but y has {yv.size}")
    if mat.shape[0] < 2:
        raise ValueError("rank correlation needs at least two rows")
    d = mat.shape[1]

    col_ranks = [average_ranks(mat[:, i]) for i in range(d)]
    y_ranks = average_ranks(yv)

    target_corr = np.array([_rank_correlation(col_ranks[i], y_ranks) for i in range(d)])
    feature_corr = np.eye(d)
    for i in range(d):
        for j in range(i + 1, d):
            rho = _rank_correlation(col_ranks[i], col_ranks[j])
            feature_corr[i, j] = rho
            feature_corr[j, i] = rho
    return CorrelationProfile(target_corr, feature_corr)


def correlation_profile(ds) -> CorrelationProfile:
    """Profile an all-numeric :class:`~qubokit.dataset.Dataset` against its target.

    Rank correlations are invariant under the standardization step, so this
    accepts encoded datasets whether or not they have been normalized yet.
    """
    return profile_from_arrays(ds.feature_matrix(), ds.target)
