"""
Data Input/Output Service

CSV ingestion of one numeric column and JSON/CSV reporting.

Rules:
- CSV is UTF-8 with '.' as decimal separator; the header row is optional
- A column is selected by header name or by 0-based index
- Entirely blank lines are skipped; any other cell that is blank or not a
  finite number is rejected with its data row number (1-based, header excluded)
- JSON reports carry "spec_version" and are rendered with sorted keys, so
  seeded runs print byte-identical output
- CSV artifacts hold one column written with 17 significant digits, which
  re-reads to the identical float64 values
"""

import json
import logging
import math
import sys
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd

from madstat import REPORT_SCHEMA_VERSION
from madstat.models.series import Series
from madstat.services.errors import InputValidationError

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.17g"


def _select_column(frame: pd.DataFrame, column: Union[str, int, None], has_header: bool) -> pd.Series:
    if column is None:
        if frame.shape[1] != 1:
            raise InputValidationError(f"file has {frame.shape[1]} columns; choose one with --column")
        return frame.iloc[:, 0]
    if has_header and str(column) in frame.columns:
        return frame[str(column)]
    try:
        index = int(column)
    except (TypeError, ValueError):
        raise InputValidationError(f"column {column!r} not found (available: {list(frame.columns)})")
    if not 0 <= index < frame.shape[1]:
        raise InputValidationError(f"column index {index} out of range (file has {frame.shape[1]} columns)")
    return frame.iloc[:, index]


def _parse_cell(text: str) -> float:
    # correctly rounded: %.17g text reads back to the same float64
    try:
        return float(text)
    except ValueError:
        return math.nan


def read_column(path: Union[str, Path],
                column: Union[str, int, None] = None,
                has_header: bool = True) -> Series:
    """
    Read one numeric column of a CSV file into a Series.

    Args:
        path: CSV file
        column: header name or 0-based index; optional for one-column files
        has_header: False for files without a header row

    Raises:
        InputValidationError: missing file, unknown column, empty column, or a
            cell that is not a finite number (the message names the row)
    """
    path = Path(path)
    if not path.is_file():
        raise InputValidationError(f"input file not found: {path}")

    try:
        frame = pd.read_csv(
            path,
            header=0 if has_header else None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise InputValidationError(f"input file is empty: {path}")
    except (pd.errors.ParserError, UnicodeDecodeError) as exc:
        raise InputValidationError(f"cannot parse {path}: {exc}")

    if not has_header:
        frame.columns = [str(index) for index in range(frame.shape[1])]
    cells = _select_column(frame, column, has_header).astype(str).str.strip()
    if cells.empty:
        raise InputValidationError(f"column {column!r} of {path} has no rows")

    numbers = cells.map(_parse_cell).to_numpy(dtype=np.float64)
    bad = np.flatnonzero(~np.isfinite(numbers))
    if bad.size:
        row = int(bad[0])
        raise InputValidationError(f"row {row + 1}: cell {cells.iloc[row]!r} is not a finite number")

    logger.info(f"Read {numbers.size:,} values from {path.name}")
    return Series(numbers)


def with_version(report: dict) -> dict:
    return {**report, "spec_version": REPORT_SCHEMA_VERSION}


def render_json(report: dict) -> str:
    """Sorted-key JSON text of a report (spec_version added)."""
    return json.dumps(with_version(report), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_report(report: dict, out: Optional[Union[str, Path]] = None) -> str:
    """Write the JSON report to ``out`` or stdout and return the text."""
    text = render_json(report)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Report written to {out}")
    return text


def write_column(values: Union[Series, Sequence[float], np.ndarray],
                 path: Union[str, Path],
                 name: str = "value",
                 float_format: str = CSV_FLOAT_FORMAT) -> Path:
    """Single-column CSV with a header row."""
    array = values.values if isinstance(values, Series) else np.asarray(values, dtype=np.float64)
    path = Path(path)
    pd.DataFrame({name: array}).to_csv(path, index=False, float_format=float_format)
    logger.info(f"Wrote {array.size:,} values to {path}")
    return path


def artifact_path(out: Optional[Union[str, Path]], suffix: str, default_stem: str = "madstat") -> Path:
    """``<out stem>.<suffix>.csv`` beside the report (or in the working directory)."""
    if out is None:
        return Path(f"{default_stem}.{suffix}.csv")
    out = Path(out)
    return out.with_name(f"{out.stem}.{suffix}.csv")
