"""Contains logging related utility functions.

Console logs go to stderr, stdout carries the CSV and JSON written by the CLI.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

PACKAGE_LOGGER = "gmq"
LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"


def cli_level(verbose: bool) -> int:
    """Log level of a CLI command: DEBUG with -v, INFO otherwise."""
    return logging.DEBUG if verbose else logging.INFO


def configure(
    log_level: int, log_path: Path | None = None, prefix: str | None = PACKAGE_LOGGER
) -> logging.Logger:
    """Configure the package loggers.

    Args:
        log_level: The desired verbosity level.
        log_path: Optional file that receives a copy of the logs.
        prefix: The logger to configure. None configures the root logger.

    Returns:
        The configured logger.
    """
    logger = logging.getLogger(prefix)

    # Handlers of an earlier command may point at streams that no longer exist.
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    for filter in list(logger.filters):
        logger.removeFilter(filter)

    logger.setLevel(log_level)
    formatter = logging.Formatter(LOG_FORMAT)

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(formatter)
    logger.addHandler(stderr_handler)

    if log_path is not None:
        file_handler = logging.FileHandler(log_path, mode="w")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)
    return logger
