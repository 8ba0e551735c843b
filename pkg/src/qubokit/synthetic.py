"""Deterministic synthetic credit-scoring-style datasets.

These generators exist so that tests and demos can run without shipping the
real public benchmark files (see fixtures/README.md for how to obtain
those).  Shapes and nuisance properties mirror the real ones: a mixed
categorical/numeric table with a ~30% minority class at 1000 x 20, and an
all-numeric table with missing cells and a ~7% minority class.  Targets are
driven by a latent risk score through a subset of informative columns, so
correlation-based selection has real structure to find.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np


def _latent_table(rows: int, n_numeric: int, n_informative: int, minority: float, seed: int):
    """Numeric block + binary target; the first n_informative columns carry signal.

    Each informative column observes its own latent component, so the
    informative block is only mildly redundant; the target thresholds a
    weighted sum of the components.  Remaining columns are pure noise.
    """
    rng = np.random.default_rng(seed)
    components = rng.normal(size=(rows, n_informative))
    weights = 1.0 / np.sqrt(1.0 + 0.6 * np.arange(n_informative))
    risk = components @ weights
    risk = risk / np.sqrt(float(weights @ weights))
    cols = []
    for i in range(n_numeric):
        if i < n_informative:
            col = components[:, i] + 0.45 * rng.normal(size=rows)
        else:
            col = rng.normal(size=rows)
        cols.append(col)
    score = risk + 0.35 * rng.normal(size=rows)
    target = (score >= np.quantile(score, 1.0 - minority)).astype(int)
    return np.column_stack(cols), target, risk, rng


def _bin_labels(values: np.ndarray, labels: list[str]) -> list[str]:
    edges = np.quantile(values, np.linspace(0, 1, len(labels) + 1)[1:-1])
    return [labels[int(np.searchsorted(edges, v))] for v in values]


def write_german_credit_style(path, rows: int = 1000, seed: int = 11) -> Path:
    """A 20-feature stand-in shaped like the German credit table.

    13 categorical + 7 numeric features, binary target with a ~30% minority
    class.  Several categorical columns are quantile bins of informative
    latent scores, so they matter for prediction; the rest are noise.
    """
    numeric, target, risk, rng = _latent_table(
        rows, n_numeric=7, n_informative=4, minority=0.30, seed=seed
    )
    header = [f"num{i:02d}" for i in range(1, 8)] + [f"cat{i:02d}" for i in range(1, 14)] + ["outcome"]
    cat_cols: list[list[str]] = []
    for i in range(13):
        n_levels = 3 + (i % 3)
        labels = [f"c{i + 1}l{j}" for j in range(n_levels)]
        if i < 4:
            signal = (0.8 - 0.1 * i) * risk + 0.6 * rng.normal(size=rows)
            cat_cols.append(_bin_labels(signal, labels))
        else:
            cat_cols.append([labels[k] for k in rng.integers(0, n_levels, size=rows)])

    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for r in range(rows):
            row = [f"{v:.6f}" for v in numeric[r]]
            row += [col[r] for col in cat_cols]
            row.append("good" if target[r] == 0 else "bad")
            writer.writerow(row)
    return path


def write_credit_risk_style(path, rows: int = 20000, seed: int = 13) -> Path:
    """A 10-feature all-numeric stand-in shaped like large credit-risk tables.

    Binary target with a ~6.7% minority class; two columns contain "NA"
    cells the way income-style fields do in the wild.
    """
    numeric, target, _, rng = _latent_table(
        rows, n_numeric=10, n_informative=4, minority=0.067, seed=seed
    )
    missing_cols = {4: 0.20, 7: 0.026}  # column index -> missing fraction

    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{i:02d}" for i in range(1, 11)] + ["delinquent"])
        for r in range(rows):
            row = []
            for c in range(10):
                if c in missing_cols and rng.random() < missing_cols[c]:
                    row.append("NA")
                else:
                    row.append(f"{numeric[r, c]:.6f}")
            row.append(str(int(target[r])))
            writer.writerow(row)
    return path


def make_informative_noise(rows: int = 2000, n_informative: int = 3, n_noise: int = 3, seed: int = 5):
    """In-memory dataset with labelled ground truth for selection tests.

    Returns ``(X, y, names)`` where the first ``n_informative`` columns are
    correlated with the target and the rest are independent noise.
    """
    X, y, _, _ = _latent_table(
        rows, n_numeric=n_informative + n_noise, n_informative=n_informative, minority=0.4, seed=seed
    )
    names = [f"inf{i}" for i in range(n_informative)] + [f"noise{i}" for i in range(n_noise)]
    return X, y, names


def write_informative_noise(path, rows: int = 2000, n_informative: int = 3, n_noise: int = 3, seed: int = 5) -> Path:
    X, y, names = make_informative_noise(rows, n_informative, n_noise, seed)
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names + ["label"])
        for r in range(X.shape[0]):
            writer.writerow([f"{v:.6f}" for v in X[r]] + [str(int(y[r]))])
    return path
