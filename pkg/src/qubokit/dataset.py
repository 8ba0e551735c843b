"""CSV ingestion and the column-typed dataset container.

Ingestion is deliberately conservative: a header row is required, every
record must have the same width, and the target column must be two-valued.
Column kinds are inferred by inspection (a column where every non-missing
cell parses as a number is numeric, anything else is categorical), missing
numeric cells are imputed with the column median, and everything that
happened is recorded in an :class:`IngestionReport` so a run can be audited
after the fact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace

import numpy as np

from ._validation import as_float_vector
from .errors import DataError

NUMERIC = "numeric"
CATEGORICAL = "categorical"

# Cell spellings treated as unknown values, compared case-insensitively.
MISSING_TOKENS = frozenset({"", "na", "n/a", "nan", "null", "none", "?"})


def _is_missing(cell: str) -> bool:
    return cell.strip().lower() in MISSING_TOKENS


def _parse_number(cell: str) -> float | None:
    try:
        return float(cell)
    except ValueError:
        return None


@dataclass(frozen=True, eq=False)
class Dataset:
    """Column store for one modelling problem.

    ``columns`` holds one 1-D array per feature: float64 for numeric columns
    and object (strings) for categorical ones.  ``target`` is always 0/1.
    """

    names: tuple[str, ...]
    kinds: tuple[str, ...]
    columns: tuple[np.ndarray, ...]
    target: np.ndarray

    def __post_init__(self) -> None:
        if not (len(self.names) == len(self.kinds) == len(self.columns)):
            raise ValueError("names, kinds and columns must have equal length")
        if len(self.names) == 0:
            raise ValueError("a dataset needs at least one feature")
        for kind in self.kinds:
            if kind not in (NUMERIC, CATEGORICAL):
                raise ValueError(f"unknown column kind: {kind!r}")
        target = np.asarray(self.target)
        if target.ndim != 1 or (target.size and not np.all(np.isin(target, (0, 1)))):
            raise ValueError("target must be a 1-D 0/1 vector")
        rows = target.size
        cols = []
        for name, kind, col in zip(self.names, self.kinds, self.columns):
            arr = np.asarray(col)
            if arr.ndim != 1 or arr.size != rows:
                raise ValueError(f"column {name!r} must be 1-D with {rows} entries")
            if kind == NUMERIC:
                arr = as_float_vector(arr, name)
            else:
                arr = arr.astype(object)
            arr.setflags(write=False)
            cols.append(arr)
        tgt = target.astype(np.int64)
        tgt.setflags(write=False)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "kinds", tuple(self.kinds))
        object.__setattr__(self, "columns", tuple(cols))
        object.__setattr__(self, "target", tgt)

    @property
    def rows(self) -> int:
        return self.target.size

    @property
    def n_features(self) -> int:
        return len(self.names)

    def feature_matrix(self) -> np.ndarray:
        """Stack all columns into a float matrix; fails on categorical columns."""
        bad = [n for n, k in zip(self.names, self.kinds) if k != NUMERIC]
        if bad:
            raise DataError(f"columns not numeric yet (encode first): {', '.join(bad)}")
        return np.column_stack([c.astype(float) for c in self.columns])

    def take(self, indices) -> "Dataset":
        """Row subset in the given index order, e.g. one side of a split."""
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(
            self.names,
            self.kinds,
            tuple(col[idx] for col in self.columns),
            self.target[idx],
        )

    def to_dict(self) -> dict:
        return {
            "names": list(self.names),
            "kinds": list(self.kinds),
            "columns": [c.tolist() for c in self.columns],
            "target": self.target.tolist(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Dataset":
        missing = [k for k in ("names", "kinds", "columns", "target") if k not in doc]
        if missing:
            raise DataError(f"dataset document missing fields: {', '.join(missing)}")
        try:
            columns = tuple(
                np.array(col, dtype=float if kind == NUMERIC else object)
                for col, kind in zip(doc["columns"], doc["kinds"], strict=True)
            )
            return cls(tuple(doc["names"]), tuple(doc["kinds"]), columns, np.array(doc["target"]))
        except (TypeError, ValueError) as exc:
            raise DataError(f"malformed dataset document: {exc}") from exc


@dataclass(frozen=True)
class IngestionReport:
    """What ingestion (and later encoding) did to the raw file."""

    rows: int
    target_column: str
    target_mapping: dict
    kinds: dict
    imputations: dict = field(default_factory=dict)
    missing_categories: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()
    encodings: dict = field(default_factory=dict)

    @property
    def n_features(self) -> int:
        return len(self.kinds)

    def with_encodings(self, encodings: dict) -> "IngestionReport":
        return replace(self, encodings=dict(encodings))

    def to_dict(self) -> dict:
        return {
            "rows": self.rows,
            "n_features": self.n_features,
            "target_column": self.target_column,
            "target_mapping": dict(self.target_mapping),
            "kinds": dict(self.kinds),
            "imputations": dict(self.imputations),
            "missing_categories": dict(self.missing_categories),
            "warnings": list(self.warnings),
            "encodings": dict(self.encodings),
        }


def _read_records(source, delimiter: str) -> tuple[list[str], list[list[str]]]:
    if hasattr(source, "read"):
        raw = source.read()
    else:
        with open(source, "rb") as fh:
            raw = fh.read()
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8")
    reader = csv.reader(io.StringIO(raw), delimiter=delimiter)
    records = [row for row in reader if row]
    if not records:
        raise DataError("input is empty: expected a header row")
    header = [cell.strip() for cell in records[0]]
    width = len(header)
    body = []
    for lineno, row in enumerate(records[1:], start=2):
        if len(row) != width:
            raise DataError(f"line {lineno}: expected {width} fields, got {len(row)}")
        body.append([cell.strip() for cell in row])
    if not body:
        raise DataError("input has a header but no data rows")
    return header, body


def _map_target(raw: list[str], column: str) -> tuple[np.ndarray, dict]:
    for value in raw:
        if _is_missing(value):
            raise DataError(f"target column {column!r} contains missing values")
    distinct = sorted(set(raw))
    if set(distinct) <= {"0", "1"}:
        mapping = {"0": 0, "1": 1}
    elif len(distinct) == 2:
        # Sort numerically when both values parse, else lexicographically;
        # either way the mapping is independent of row order.
        a, b = distinct
        if _parse_number(a) is not None and _parse_number(b) is not None:
            a, b = sorted(distinct, key=float)
        mapping = {a: 0, b: 1}
    else:
        raise DataError(
            f"target column {column!r} must be binary, found {len(distinct)} distinct values"
        )
    encoded = np.array([mapping[v] for v in raw], dtype=np.int64)
    return encoded, mapping


def ingest_csv_with_report(source, target_column: str, delimiter: str = ",") -> tuple[Dataset, IngestionReport]:
    """Parse a delimited file into a typed dataset plus an audit report."""
    header, body = _read_records(source, delimiter)
    if target_column not in header:
        raise DataError(f"target column {target_column!r} not found in header {header}")
    target_idx = header.index(target_column)

    target, target_mapping = _map_target([row[target_idx] for row in body], target_column)

    names = [h for i, h in enumerate(header) if i != target_idx]
    if len(set(names)) != len(names):
        raise DataError("duplicate feature names in header")

    kinds: dict[str, str] = {}
    imputations: dict[str, int] = {}
    missing_categories: dict[str, int] = {}
    notes: list[str] = []
    columns: list[np.ndarray] = []

    for name in names:
        col_idx = header.index(name)
        cells = [row[col_idx] for row in body]
        present = [c for c in cells if not _is_missing(c)]
        if not present:
            raise DataError(f"column {name!r} has no known values")
        parsed = [_parse_number(c) for c in present]
        if all(v is not None for v in parsed):
            kinds[name] = NUMERIC
            values = np.array(
                [v if v is not None else np.nan
                 for v in (_parse_number(c) if not _is_missing(c) else None for c in cells)]
            )
            n_missing = int(np.isnan(values).sum())
            if n_missing:
                median = float(np.median(values[~np.isnan(values)]))
                values[np.isnan(values)] = median
                imputations[name] = n_missing
                notes.append(f"{name}: imputed {n_missing} missing values with median {median!r}")
            columns.append(values)
        else:
            kinds[name] = CATEGORICAL
            # Missing cells collapse to one empty-string category so that
            # "unknown" stays visible to the encoder instead of being guessed.
            normalized = ["" if _is_missing(c) else c for c in cells]
            n_missing = sum(1 for c in normalized if c == "")
            if n_missing:
                missing_categories[name] = n_missing
                notes.append(f"{name}: kept {n_missing} missing cells as their own category")
            columns.append(np.array(normalized, dtype=object))

    ds = Dataset(tuple(names), tuple(kinds[n] for n in names), tuple(columns), target)
    report = IngestionReport(
        rows=ds.rows,
        target_column=target_column,
        target_mapping={k: int(v) for k, v in target_mapping.items()},
        kinds=dict(kinds),
        imputations=imputations,
        missing_categories=missing_categories,
        warnings=tuple(notes),
    )
    return ds, report


def ingest_csv(source, target_column: str, delimiter: str = ",") -> Dataset:
    """Parse a delimited file into a typed dataset; see the module docstring."""
    ds, _ = ingest_csv_with_report(source, target_column, delimiter)
    return ds
