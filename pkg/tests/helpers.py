"""Small builders shared across test modules."""

import numpy as np

from qubokit import QuboModel


def all_assignments(n):
    """Every binary vector of length n, in ascending integer order (bit i = 2**i)."""
    for v in range(2**n):
        yield np.array([(v >> i) & 1 for i in range(n)])


def random_model(rng, n, scale=5.0):
    return QuboModel(
        float(rng.uniform(-scale, scale)),
        rng.uniform(-scale, scale, n),
        rng.uniform(-scale, scale, (n, n)),
    )


def integer_model(rng, n, lo=-5, hi=6):
    """Integer-valued coefficients keep all energy sums exact in float64."""
    return QuboModel(
        float(rng.integers(lo, hi)),
        rng.integers(lo, hi, n).astype(float),
        rng.integers(lo, hi, (n, n)).astype(float),
    )
