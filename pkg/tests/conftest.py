"""Shared fixtures.

The credit-style fixtures prefer real benchmark files dropped into
fixtures/ (see fixtures/README.md for provenance and download notes) and
fall back to the deterministic synthetic stand-ins shipped with the
package, which reproduce the shapes: 1000 x 20 with mixed column kinds for
the German credit table, 20000 x 10 all-numeric with missing cells for the
large credit-risk table.
"""

from __future__ import annotations

import csv
from pathlib import Path

import pytest

from qubokit.synthetic import (
    write_credit_risk_style,
    write_german_credit_style,
    write_informative_noise,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def _convert_german_data(raw: Path, out: Path) -> Path:
    """Real german.data is space-separated without a header; give it one."""
    with raw.open() as fh:
        records = [line.split() for line in fh if line.strip()]
    header = [f"a{i:02d}" for i in range(1, 21)] + ["outcome"]
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(records)
    return out


def _convert_credit_risk(raw: Path, out: Path, rows: int = 20000) -> Path:
    """Real cs-training.csv carries an unnamed index column; drop it, rename
    the columns to the synthetic stand-in's schema (target "delinquent",
    features f01..) and subsample the first ``rows`` data rows so tests stay
    desk-scale."""
    with raw.open(newline="") as fh:
        reader = csv.reader(fh)
        width = len(next(reader)) - 1
        body = [row[1:] for _, row in zip(range(rows), reader)]
    header = ["delinquent"] + [f"f{i:02d}" for i in range(1, width)]
    with out.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(body)
    return out


@pytest.fixture(scope="session")
def gcd_csv(tmp_path_factory) -> Path:
    real = FIXTURES / "german.data"
    out = tmp_path_factory.mktemp("gcd") / "german_credit.csv"
    if real.exists():
        return _convert_german_data(real, out)
    return write_german_credit_style(out)


@pytest.fixture(scope="session")
def gms_csv(tmp_path_factory) -> Path:
    real = FIXTURES / "cs-training.csv"
    out = tmp_path_factory.mktemp("gms") / "credit_risk.csv"
    if real.exists():
        return _convert_credit_risk(real, out)
    return write_credit_risk_style(out)


@pytest.fixture(scope="session")
def demo_csv(tmp_path_factory) -> Path:
    return write_informative_noise(tmp_path_factory.mktemp("demo") / "demo.csv")
