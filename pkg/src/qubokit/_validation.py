"""Input validation helpers shared by the public API.

All helpers return freshly-allocated numpy arrays so callers can treat the
results as private copies, and raise ``ValueError`` with the offending
argument named in the message.
"""

from __future__ import annotations

import numpy as np


def check_finite(values: np.ndarray, name: str) -> None:
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{name} must contain only finite values")


def as_float_vector(values, name: str = "vector") -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    check_finite(arr, name)
    return arr


def as_float_matrix(values, name: str = "matrix") -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be two-dimensional, got shape {arr.shape}")
    check_finite(arr, name)
    return arr


def as_square_matrix(values, n: int, name: str = "matrix") -> np.ndarray:
    arr = as_float_matrix(values, name)
    if arr.shape != (n, n):
        raise ValueError(f"{name} must have shape ({n}, {n}), got {arr.shape}")
    return arr


def as_binary_vector(values, n: int | None = None, name: str = "x") -> np.ndarray:
    """Coerce to a 1-D int64 array of 0/1 entries, never truncating silently."""
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.all(np.isin(arr, (0, 1))):
        raise ValueError(f"{name} must contain only 0/1 entries")
    if n is not None and arr.size != n:
        raise ValueError(f"{name} has length {arr.size}, expected {n}")
    return arr.astype(np.int64)


def as_spin_vector(values, n: int | None = None, name: str = "s") -> np.ndarray:
    """Coerce to a 1-D int64 array of -1/+1 entries."""
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.all(np.isin(arr, (-1, 1))):
        raise ValueError(f"{name} must contain only -1/+1 entries")
    if n is not None and arr.size != n:
        raise ValueError(f"{name} has length {arr.size}, expected {n}")
    return arr.astype(np.int64)


def check_2d_numeric(X, name: str = "X") -> np.ndarray:
    """Validate a feature matrix: 2-D, finite, at least one row and column."""
    arr = as_float_matrix(X, name)
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and one column")
    return arr
