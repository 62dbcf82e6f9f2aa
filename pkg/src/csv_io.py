"""
CSV reading and writing for datasets, predictions and reports.

Floats are written with 17 significant digits and read back with the
round-trip parser, so values survive a write/read cycle bit-identically.
"""
from pathlib import Path
from typing import IO, Optional, Sequence, Union

import numpy as np
import pandas as pd
from loguru import logger

from src.datasets import Dataset
from src.errors import DataParseError
from src.utils import constants as cols

FLOAT_FORMAT = "%.17g"
_TRUE_VALUES = {"1", "true", "True", "TRUE"}
_FALSE_VALUES = {"0", "false", "False", "FALSE"}

PathOrBuffer = Union[str, Path, IO[str]]


def _read_frame(path: PathOrBuffer) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError as e:
        raise DataParseError(f"CSV file is empty: {path}", line=1) from e
    except pd.errors.ParserError as e:
        raise DataParseError(f"Malformed CSV {path}: {e}") from e
    except OSError as e:
        raise DataParseError(f"Cannot read CSV {path}: {e}") from e

    if frame.empty:
        raise DataParseError(f"CSV file has no data rows: {path}", line=2)
    return frame


def _numeric_column(frame: pd.DataFrame, column: str) -> np.ndarray:
    values = np.empty(len(frame))
    for row, cell in enumerate(frame[column].str.strip()):
        try:
            values[row] = float(cell)
        except ValueError:
            values[row] = np.nan
        if not np.isfinite(values[row]):
            # header is line 1, first data row is line 2
            raise DataParseError(
                f"Invalid numeric value '{cell}' in column '{column}' at line {row + 2} (row {row + 1})",
                line=row + 2,
            )
    return values


def _flag_column(frame: pd.DataFrame, column: str) -> np.ndarray:
    raw = frame[column].str.strip()
    flags = np.zeros(len(raw), dtype=bool)
    for row, value in enumerate(raw):
        if value in _TRUE_VALUES:
            flags[row] = True
        elif value not in _FALSE_VALUES:
            raise DataParseError(
                f"Invalid flag '{value}' in column '{column}' at line {row + 2} (row {row + 1})",
                line=row + 2,
            )
    return flags


def _require_columns(frame: pd.DataFrame, required: Sequence[str], path: PathOrBuffer) -> None:
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise DataParseError(f"CSV {path} is missing required columns: {', '.join(missing)}", line=1)


def read_dataset_csv(path: PathOrBuffer) -> Dataset:
    """
    Read a dataset with header `x,y[,is_outlier,f_true]`.

    Raises:
        DataParseError: On empty files, missing columns or bad cells,
            naming the offending line
    """
    frame = _read_frame(path)
    _require_columns(frame, [cols.X, cols.Y], path)
    dataset = Dataset(
        x=_numeric_column(frame, cols.X),
        y=_numeric_column(frame, cols.Y),
        is_outlier=_flag_column(frame, cols.IS_OUTLIER) if cols.IS_OUTLIER in frame.columns else None,
        f_true=_numeric_column(frame, cols.F_TRUE) if cols.F_TRUE in frame.columns else None,
    )
    logger.debug(f"Read {dataset.n} rows from {path}")
    return dataset


def read_query_csv(path: PathOrBuffer) -> np.ndarray:
    """Query inputs from a CSV with an `x` column."""
    frame = _read_frame(path)
    _require_columns(frame, [cols.X], path)
    return _numeric_column(frame, cols.X)


def dataset_frame(dataset: Dataset) -> pd.DataFrame:
    frame = pd.DataFrame({cols.X: dataset.x, cols.Y: dataset.y})
    if dataset.is_outlier is not None:
        frame[cols.IS_OUTLIER] = dataset.is_outlier.astype(int)
    if dataset.f_true is not None:
        frame[cols.F_TRUE] = dataset.f_true
    return frame


def write_frame_csv(frame: pd.DataFrame, path: Optional[PathOrBuffer]) -> Optional[str]:
    """Write a frame as CSV; with path=None the CSV text is returned instead."""
    if path is None:
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    if isinstance(path, (str, Path)):
        Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return None


def write_dataset_csv(dataset: Dataset, path: Optional[PathOrBuffer]) -> Optional[str]:
    return write_frame_csv(dataset_frame(dataset), path)
