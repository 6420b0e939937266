"""Shared fixtures of the gmq test suite."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pytest

from gmq.models import Dataset
from gmq.simulation import make_rng
from gmq.utils import io
from gmq.utils.logging import PACKAGE_LOGGER

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def reset_logging():
    """Drop handlers that CLI tests attach to streams CliRunner closes afterwards."""
    yield
    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    logger.setLevel(logging.NOTSET)


@pytest.fixture
def tiny_csv() -> Path:
    """Five observations on one covariate, no intercept."""
    return DATA_DIR / "tiny.csv"


@pytest.fixture
def tiny_oracle() -> dict:
    """Exact median regression solution of tiny.csv."""
    return io.load_json(DATA_DIR / "tiny_oracle.json")


@pytest.fixture
def tiny_dataset(tiny_csv: Path) -> Dataset:
    return io.load_dataset(tiny_csv)


@pytest.fixture
def random_dataset() -> Dataset:
    """Seeded dataset with n=50, p=3 and an intercept."""
    rng = make_rng(7)
    X = rng.standard_normal((50, 3))
    y = 0.5 + X @ np.array([1.0, -2.0, 0.5]) + rng.standard_normal(50)
    return Dataset(X=X, y=y, has_intercept=True)
