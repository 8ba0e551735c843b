"""Dense QUBO and Ising containers and the transformations between them.

A QUBO instance is the triple ``(offset, linear, quadratic)`` over binary
variables.  The energy of an assignment ``x`` in {0, 1}^n is

    offset + linear . x + x^T quadratic x

where the quadratic form is evaluated as the full double sum, so an
asymmetric matrix contributes both its (i, j) and (j, i) entries.  The
symmetric, upper-triangular and linear-absorbed forms produced here all
preserve that energy on every assignment (within ``ENERGY_ATOL`` at the
problem sizes this package targets).

Models are immutable after construction: arrays are copied in and marked
read-only, which also makes instances safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import (
    as_binary_vector,
    as_float_vector,
    as_spin_vector,
    as_square_matrix,
)
from .errors import DataError

# Absolute tolerance for energy identities (canonical forms, conversions).
ENERGY_ATOL = 1e-9

_MODEL_FIELDS = ("n", "offset", "linear", "quadratic")


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class QuboModel:
    """Quadratic unconstrained binary optimization instance.

    Parameters
    ----------
    offset : float
        Constant energy term.  Never affects which assignments are optimal.
    linear : array of shape (n,)
        Coefficients of the linear term.
    quadratic : array of shape (n, n)
        General real matrix; no symmetry is assumed.
    """

    offset: float
    linear: np.ndarray
    quadratic: np.ndarray

    def __post_init__(self) -> None:
        linear = as_float_vector(self.linear, "linear")
        quadratic = as_square_matrix(self.quadratic, linear.size, "quadratic")
        offset = float(self.offset)
        if not np.isfinite(offset):
            raise ValueError("offset must be finite")
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "linear", _freeze(linear))
        object.__setattr__(self, "quadratic", _freeze(quadratic))

    @property
    def n(self) -> int:
        return self.linear.size

    @classmethod
    def zeros(cls, n: int) -> "QuboModel":
        if n < 1:
            raise ValueError("n must be at least 1")
        return cls(0.0, np.zeros(n), np.zeros((n, n)))

    def energy(self, x) -> float:
        return energy(self, x)

    def to_dict(self) -> dict:
        """Serializable document with the fixed field names n/offset/linear/quadratic."""
        return {
            "n": self.n,
            "offset": self.offset,
            "linear": self.linear.tolist(),
            "quadratic": self.quadratic.tolist(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "QuboModel":
        missing = [k for k in _MODEL_FIELDS if k not in doc]
        if missing:
            raise DataError(f"model document missing fields: {', '.join(missing)}")
        try:
            model = cls(float(doc["offset"]), doc["linear"], doc["quadratic"])
        except (TypeError, ValueError) as exc:
            raise DataError(f"malformed model document: {exc}") from exc
        if model.n != int(doc["n"]):
            raise DataError(
                f"model document declares n={doc['n']} but has {model.n} linear coefficients"
            )
        return model


@dataclass(frozen=True, eq=False)
class IsingModel:
    """Ising instance over spin variables s in {-1, +1}^n.

    ``couplings`` is strictly upper triangular; the energy of a spin vector is
    ``offset + fields . s + sum_{i<j} couplings[i, j] s_i s_j``.
    """

    offset: float
    fields: np.ndarray
    couplings: np.ndarray

    def __post_init__(self) -> None:
        fields = as_float_vector(self.fields, "fields")
        couplings = as_square_matrix(self.couplings, fields.size, "couplings")
        if np.any(np.tril(couplings) != 0.0):
            raise ValueError("couplings must be strictly upper triangular")
        offset = float(self.offset)
        if not np.isfinite(offset):
            raise ValueError("offset must be finite")
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "fields", _freeze(fields))
        object.__setattr__(self, "couplings", _freeze(couplings))

    @property
    def n(self) -> int:
        return self.fields.size

    def energy(self, s) -> float:
        return ising_energy(self, s)


def energy(model: QuboModel, x) -> float:
    """Energy of a binary assignment under the full double-sum quadratic form."""
    xv = as_binary_vector(x, model.n).astype(float)
    return float(model.offset + model.linear @ xv + xv @ model.quadratic @ xv)


def ising_energy(model: IsingModel, s) -> float:
    sv = as_spin_vector(s, model.n).astype(float)
    return float(model.offset + model.fields @ sv + sv @ model.couplings @ sv)


def absorb_linear(model: QuboModel) -> QuboModel:
    """Fold the linear term into the diagonal, using x_i^2 = x_i.

    Returns a model with zero linear part and quadratic ``Q + Diag(linear)``;
    the offset is untouched and every assignment keeps its energy.
    """
    quadratic = model.quadratic + np.diag(model.linear)
    return QuboModel(model.offset, np.zeros(model.n), quadratic)


def to_symmetric(model: QuboModel) -> QuboModel:
    """Symmetric canonical form: off-diagonal entries averaged, diagonal kept."""
    # (Q + Q^T) / 2 leaves the diagonal alone and swaps no energy around:
    # the pair (i, j) still contributes q_ij + q_ji in the double sum.
    return QuboModel(model.offset, model.linear, (model.quadratic + model.quadratic.T) / 2.0)


def to_upper_triangular(model: QuboModel) -> QuboModel:
    """Upper-triangular canonical form: q_ij + q_ji stored above the diagonal."""
    q = model.quadratic
    return QuboModel(model.offset, model.linear, np.triu(q) + np.triu(q.T, 1))


def binary_to_spin(x) -> np.ndarray:
    """Map {0, 1} to {-1, +1} via s = 2x - 1."""
    return 2 * as_binary_vector(x) - 1


def spin_to_binary(s) -> np.ndarray:
    """Map {-1, +1} to {0, 1} via x = (s + 1) / 2."""
    return (as_spin_vector(s) + 1) // 2


def qubo_to_ising(model: QuboModel) -> IsingModel:
    """Rewrite the model over spins using x = (s + 1) / 2.

    Substituting and using s_i^2 = 1:

    * diagonal q_ii and the linear b_i act alike: (b_i + q_ii) (s_i + 1) / 2
    * an off-diagonal pair gives q_ij (s_i s_j + s_i + s_j + 1) / 4

    so the couplings collect (q_ij + q_ji) / 4 above the diagonal and the
    fields pick up a quarter of each variable's off-diagonal row and column.
    """
    b = model.linear
    q = model.quadratic
    diag = np.diag(q)
    cross = q + q.T  # cross[i, j] = q_ij + q_ji
    off_row_sums = cross.sum(axis=1) - 2.0 * diag

    couplings = np.triu(cross, 1) / 4.0
    fields = (b + diag) / 2.0 + off_row_sums / 4.0
    offset = model.offset + float((b + diag).sum()) / 2.0 + float(np.triu(cross, 1).sum()) / 4.0
    return IsingModel(offset, fields, couplings)


def ising_to_qubo(model: IsingModel) -> QuboModel:
    """Rewrite an Ising model over binaries using s = 2x - 1.

    Each coupling J_ij s_i s_j expands to 4 J_ij x_i x_j - 2 J_ij (x_i + x_j)
    + J_ij, and each field h_i s_i to 2 h_i x_i - h_i.
    """
    h = model.fields
    j = model.couplings
    quadratic = 4.0 * j
    linear = 2.0 * h - 2.0 * (j.sum(axis=1) + j.sum(axis=0))
    offset = model.offset - float(h.sum()) + float(j.sum())
    return QuboModel(offset, linear, quadratic)
