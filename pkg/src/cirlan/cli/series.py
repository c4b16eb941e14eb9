"""CSV series I/O and flat report formatting."""

from __future__ import annotations

import json
import math
import sys
from collections.abc import Mapping
from pathlib import Path as FilePath
from typing import Any

import numpy as np
import pandas as pd

from cirlan.errors import SeriesFormatError
from cirlan.models.paths import Path

SERIES_COLUMNS = ["t", "x"]
SPACING_RTOL = 1e-9
FLOAT_FORMAT = "%.17g"


def _parse_cell(text: str) -> float:
    """Correctly rounded float parse; NaN when the cell is not a number."""
    try:
        return float(text)
    except ValueError:
        return math.nan


def read_series(source: str | FilePath) -> Path:
    """Parse a "t,x" CSV into a Path.

    Raises:
        SeriesFormatError: wrong header, non-numeric cells, fewer than two
            rows, non-increasing or non-uniform times, or a value <= 0.
    """
    try:
        frame = pd.read_csv(source, dtype=str, keep_default_na=False)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise SeriesFormatError(f"Cannot read series {source}: {exc}") from exc

    if list(frame.columns) != SERIES_COLUMNS:
        raise SeriesFormatError(f"Header must be exactly 't,x' (got {','.join(frame.columns)})")
    if len(frame) < 2:
        raise SeriesFormatError(f"Series needs at least 2 rows (got {len(frame)})")

    numeric = frame.map(_parse_cell)
    bad = numeric.isna().any(axis=1) | ~np.isfinite(numeric.to_numpy()).all(axis=1)
    if bad.any():
        raise SeriesFormatError(f"Non-numeric value in row {int(np.flatnonzero(bad)[0])}")

    t = numeric["t"].to_numpy(dtype=np.float64)
    x = numeric["x"].to_numpy(dtype=np.float64)

    nonpositive = np.flatnonzero(x <= 0)
    if nonpositive.size:
        row = int(nonpositive[0])
        raise SeriesFormatError(f"Value must be > 0 in row {row} (got {x[row]!r})")

    steps = np.diff(t)
    if np.any(steps <= 0):
        row = int(np.flatnonzero(steps <= 0)[0]) + 1
        raise SeriesFormatError(f"Times must be strictly increasing (row {row})")
    delta = (t[-1] - t[0]) / steps.size
    uneven = np.flatnonzero(np.abs(steps - delta) > SPACING_RTOL * delta)
    if uneven.size:
        row = int(uneven[0]) + 1
        raise SeriesFormatError(f"Times must be uniformly spaced (row {row})")

    return Path(t0=float(t[0]), delta=float(delta), values=x)


def write_frame(frame: pd.DataFrame, out: str) -> None:
    """CSV with 17 significant digits and LF line endings; stdout when out is empty."""
    frame.to_csv(out or sys.stdout, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_series(path: Path, out: str) -> None:
    write_frame(pd.DataFrame({"t": path.times, "x": path.values}), out)


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _json_value(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return format(value, ".17g") if math.isfinite(value) else json.dumps(str(value))
    if isinstance(value, int):
        return str(value)
    return json.dumps(str(value))


def format_record(record: Mapping[str, Any], as_json: bool = False) -> str:
    """One "key=value" line per entry, or a single-line flat JSON object."""
    if as_json:
        body = ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in record.items())
        return "{" + body + "}\n"
    return "".join(f"{key}={_format_value(value)}\n" for key, value in record.items())


def write_report(record: Mapping[str, Any], out: str, as_json: bool = False) -> None:
    text = format_record(record, as_json)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
