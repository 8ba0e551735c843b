"""Canonical JSON documents and aligned text tables for CLI artifacts.

Documents are rendered with sorted keys, two-space indentation and a
trailing newline, and never contain timestamps, so rerunning a command on
identical inputs reproduces every artifact byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import DataError


def document_bytes(doc: dict) -> bytes:
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")


def dump_document(doc: dict, path) -> None:
    Path(path).write_bytes(document_bytes(doc))


def load_document(path) -> dict:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DataError(f"{path} is not a valid document: {exc}") from exc
    if not isinstance(doc, dict):
        raise DataError(f"{path} must contain a JSON object")
    return doc


def render_table(headers: list[str], rows: list[list[str]]) -> str:
    """Aligned plain-text table with a separator under the header."""
    table = [[str(c) for c in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[c]) for row in table) for c in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(table[0], widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in table[1:]:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"
