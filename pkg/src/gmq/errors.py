"""Contains the exception hierarchy of the gmq package.

Every error carries a short machine-greppable ``code`` which the CLI prints as a
prefix on stderr.
"""

from __future__ import annotations


class GMQError(Exception):
    """Base class of all errors raised by gmq."""

    code = "GMQ-ERROR"


class ParameterError(GMQError, ValueError):
    """Invalid parameter value or inconsistent combination of parameters."""

    code = "GMQ-PARAM"


class LossDomainError(GMQError, ValueError):
    """Derivative requested at a point where it is not single-valued."""

    code = "GMQ-DOMAIN"


class DataError(GMQError, ValueError):
    """Malformed, degenerate or non-finite data."""

    code = "GMQ-DATA"


class GuardError(GMQError, ValueError):
    """Instance too large for an exhaustive algorithm."""

    code = "GMQ-GUARD"


class OptimizationError(GMQError, RuntimeError):
    """Optimizer hit a non-finite gradient."""

    code = "GMQ-OPTIM"

    def __init__(self, message: str, iteration: int):
        """Initialize OptimizationError."""
        super().__init__(f"{message} (iteration {iteration})")
        self.iteration = iteration
