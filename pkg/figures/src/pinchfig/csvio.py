"""Reader for the simulator's commented CSV files."""

from __future__ import annotations

import re
from pathlib import Path


class SchemaError(ValueError):
    """Input CSV is missing required structure; names the missing piece."""


def read_csv(path: str | Path) -> tuple[list[str], list[dict[str, str]], list[str]]:
    """Parse a commented CSV into (columns, rows, comment lines).

    Comment lines start with ``#`` and precede the header row.  Raises
    SchemaError on an empty file or when a row disagrees with the header.
    """
    text = Path(path).read_text(encoding="utf-8")
    comments = []
    data_lines = []
    for line in text.splitlines():
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif line.strip():
            data_lines.append(line)
    if not data_lines:
        raise SchemaError(f"{path}: no header row found")
    columns = data_lines[0].split(",")
    rows = []
    for i, line in enumerate(data_lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(columns):
            raise SchemaError(f"{path}: row {i} has {len(cells)} cells, expected {len(columns)}")
        rows.append(dict(zip(columns, cells)))
    return columns, rows, comments


def require_columns(columns: list[str], needed: tuple[str, ...], path) -> None:
    for name in needed:
        if name not in columns:
            raise SchemaError(f"{path}: missing column '{name}'")


def varphi_label(comments: list[str], fallback: str) -> str:
    """Pull the coupling length (degrees) out of the config header if present."""
    for comment in comments:
        match = re.search(r"varphi_deg=([0-9.eE+-]+)", comment)
        if match:
            return f"varphi = {float(match.group(1)):g} deg"
    return fallback
