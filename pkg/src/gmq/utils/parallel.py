"""Contains the worker pool used by replication loops."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from gmq.errors import ParameterError

LOGGER = logging.getLogger(__name__)

NUM_THREADS_ENV = "GMQ_NUM_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def num_workers() -> int:
    """Read the worker-pool width from GMQ_NUM_THREADS (default 1)."""
    value = os.environ.get(NUM_THREADS_ENV, "").strip()
    if not value:
        return 1
    try:
        workers = int(value)
    except ValueError as error:
        raise ParameterError(f"{NUM_THREADS_ENV} must be an integer, got {value!r}.") from error
    if workers < 1:
        raise ParameterError(f"{NUM_THREADS_ENV} must be at least 1, got {workers}.")
    return workers


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """Apply fn to every item, possibly on a thread pool, keeping input order.

    Each item must carry everything fn needs (including its own random
    generator), so the results do not depend on the number of workers.
    """
    workers = num_workers() if workers is None else workers
    if workers <= 1:
        return [fn(item) for item in items]
    LOGGER.debug("Running on %d threads.", workers)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
