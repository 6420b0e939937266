"""Contains dataset, table and JSON IO.

Datasets are CSV files with the header x1,...,xp,y. Tables and datasets are
written with pandas, which prints floats with the shortest repr that round-trips.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from gmq.errors import DataError
from gmq.models import Dataset

LOGGER = logging.getLogger(__name__)

RESPONSE_COLUMN = "y"


def load_dataset(path: Path, has_intercept: bool = False) -> Dataset:
    """Load a dataset from CSV.

    Every column except y is a covariate, in file order.

    Raises:
        DataError: If the file does not parse, has no y column or holds
            non-numeric values.
    """
    LOGGER.debug("Loading dataset %s.", path)
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as error:
        raise DataError(f"Could not parse {path}: {error}") from error

    if RESPONSE_COLUMN not in frame.columns:
        raise DataError(f"{path} has no '{RESPONSE_COLUMN}' column.")
    covariates = [column for column in frame.columns if column != RESPONSE_COLUMN]
    if not covariates:
        raise DataError(f"{path} has no covariate columns.")
    try:
        X = frame[covariates].to_numpy(dtype=float)
        y = frame[RESPONSE_COLUMN].to_numpy(dtype=float)
    except ValueError as error:
        raise DataError(f"{path} contains non-numeric values: {error}") from error
    return Dataset(X=X, y=y, has_intercept=has_intercept)


def dataset_to_frame(dataset: Dataset) -> pd.DataFrame:
    """Convert a dataset to a frame with columns x1..xp, y."""
    frame = pd.DataFrame(dataset.X, columns=dataset.column_names)
    frame[RESPONSE_COLUMN] = dataset.y
    return frame


def save_dataset(dataset: Dataset, path: Path) -> None:
    """Save a dataset to CSV."""
    LOGGER.debug("Saving dataset to %s.", path)
    write_table(dataset_to_frame(dataset), path)


def format_table(frame: pd.DataFrame) -> str:
    """Format a table as RFC 4180 CSV: a header row and CRLF line endings."""
    return frame.to_csv(index=False, lineterminator="\r\n")


def write_table(frame: pd.DataFrame, path: Path) -> None:
    """Write a table as CSV."""
    with open(path, "w", newline="") as f:
        f.write(format_table(frame))


def truth_path(data_path: Path) -> Path:
    """Return the path of the truth sidecar of a dataset CSV."""
    return data_path.with_suffix(".truth.json")


def load_json(path: Path) -> Any:
    """Load a JSON document.

    Raises:
        DataError: If the file is not valid JSON.
    """
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as error:
        raise DataError(f"Malformed JSON in {path}: {error}") from error


def dump_json(data: Any) -> str:
    """Serialize to indented JSON, converting numpy values."""
    return json.dumps(data, indent=2, default=_to_builtin)


def save_json(data: Any, path: Path) -> None:
    """Save a JSON document."""
    LOGGER.debug("Saving JSON to %s.", path)
    with open(path, "w") as f:
        f.write(dump_json(data))
        f.write("\n")


def _to_builtin(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable.")
