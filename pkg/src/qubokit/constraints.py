"""Penalty encodings that fold constraints into a QUBO objective.

Each function returns a new model; the input is never mutated.  Penalty
weights must be positive, and a weight returned by :func:`suggest_penalty`
is always large enough that no constraint-violating assignment can be a
global minimizer (it exceeds the largest possible energy swing of the
unconstrained model).
"""

from __future__ import annotations

import numpy as np

from .model import QuboModel


def suggest_penalty(model: QuboModel) -> float:
    """A weight strictly dominating the model's total coefficient mass."""
    return float(1.0 + np.abs(model.linear).sum() + np.abs(model.quadratic).sum())


def _check_penalty(penalty: float) -> float:
    penalty = float(penalty)
    if not penalty > 0.0:
        raise ValueError(f"penalty must be positive, got {penalty}")
    return penalty


def at_most_one_pair(model: QuboModel, i: int, j: int, penalty: float) -> QuboModel:
    """Penalize selecting variables ``i`` and ``j`` together.

    Adds ``penalty * x_i * x_j``, stored at the (min, max) entry of the
    quadratic matrix.  Assignments with at most one of the pair set keep
    their energy bit-for-bit.
    """
    penalty = _check_penalty(penalty)
    if i == j:
        raise ValueError("pair constraint needs two distinct variables")
    for idx in (i, j):
        if not 0 <= idx < model.n:
            raise ValueError(f"variable index {idx} out of range for n={model.n}")
    lo, hi = min(i, j), max(i, j)
    quadratic = model.quadratic.copy()
    quadratic[lo, hi] += penalty
    return QuboModel(model.offset, model.linear, quadratic)


def cardinality_equals(model: QuboModel, k: int, penalty: float) -> QuboModel:
    """Penalize deviations from exactly ``k`` selected variables.

    Adds ``penalty * (sum_i x_i - k)^2``, expanded into an offset term
    ``penalty * k^2``, a linear term ``penalty * (1 - 2k)`` per variable and
    ``2 * penalty`` on every off-diagonal pair.
    """
    penalty = _check_penalty(penalty)
    k = int(k)
    if not 0 <= k <= model.n:
        raise ValueError(f"cardinality {k} out of range for n={model.n}")
    offset = model.offset + penalty * k * k
    linear = model.linear + penalty * (1.0 - 2.0 * k)
    quadratic = model.quadratic + 2.0 * penalty * np.triu(np.ones((model.n, model.n)), 1)
    return QuboModel(offset, linear, quadratic)
