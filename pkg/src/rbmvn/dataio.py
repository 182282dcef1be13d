"""CSV input for the command line and library callers.

Deliberately strict: comma-separated numeric columns, an optional
single header row, no missing cells.  Error messages carry 1-based row
and column positions.  Parsing goes through float() so it is immune to
locale settings (the decimal separator is always the dot).
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .errors import CsvFormatError


def _parse_cells(cells: list[str], row_number: int) -> list[float]:
    out = []
    for j, cell in enumerate(cells):
        text = cell.strip()
        if not text:
            raise CsvFormatError(f"empty cell at row {row_number}, "
                                 f"column {j + 1}", row=row_number, column=j + 1)
        try:
            value = float(text)
        except ValueError:
            raise CsvFormatError(
                f"could not parse {text!r} as a number at row {row_number}, "
                f"column {j + 1}", row=row_number, column=j + 1) from None
        if not np.isfinite(value):
            raise CsvFormatError(
                f"non-finite value {text!r} at row {row_number}, "
                f"column {j + 1}", row=row_number, column=j + 1)
        out.append(value)
    return out


def loads_csv(text: str) -> np.ndarray:
    """Parse CSV text into an (n, m) float array."""
    rows: list[list[float]] = []
    width = None
    header_skipped = False
    for i, line in enumerate(io.StringIO(text), start=1):
        line = line.strip("\r\n")
        if not line.strip():
            if rows or header_skipped:
                # tolerate trailing blank lines only
                remainder = text.splitlines()[i:]
                if any(s.strip() for s in remainder):
                    raise CsvFormatError(f"blank line at row {i}", row=i)
                break
            raise CsvFormatError(f"blank line at row {i}", row=i)
        cells = line.split(",")
        if width is None:
            width = len(cells)
            try:
                rows.append(_parse_cells(cells, i))
            except CsvFormatError:
                # a non-numeric first row is a header
                header_skipped = True
            continue
        if len(cells) != width:
            raise CsvFormatError(
                f"row {i} has {len(cells)} columns, expected {width}", row=i)
        rows.append(_parse_cells(cells, i))
    if not rows:
        raise CsvFormatError("no data rows found")
    return np.asarray(rows, dtype=np.float64)


def load_csv(path) -> np.ndarray:
    """Read a CSV file into an (n, m) float array."""
    p = Path(path)
    if not p.exists():
        raise CsvFormatError(f"file not found: {p}")
    return loads_csv(p.read_text(encoding="utf-8"))


def save_csv(path, data: np.ndarray, header: list[str] | None = None) -> None:
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 2:
        raise ValueError("save_csv expects an (n, m) array")
    lines = []
    if header is not None:
        lines.append(",".join(header))
    for row in data:
        lines.append(",".join(repr(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
