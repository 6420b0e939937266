"""Utility functions for branch-wise evaluation of loss formulas."""

from __future__ import annotations

from typing import Callable

import numpy as np
from numpy.typing import ArrayLike


def robust_where(
    condition: ArrayLike,
    input: ArrayLike,
    branch_true_func: Callable[[np.ndarray], np.ndarray],
    branch_false_func: Callable[[np.ndarray], np.ndarray],
    branch_true_safe_value: float | None = None,
    branch_false_safe_value: float | None = None,
) -> np.ndarray:
    """Robust np.where that never evaluates a branch at an invalid input.

    np.where evaluates both branches everywhere, which raises floating point
    warnings (division by zero, log of zero, ...) at the indices where a branch
    is not selected. Replacing those inputs by safe values keeps the output
    identical and the evaluation warning free.

    Args:
        condition: When True, yield branch_true_func(input),
            otherwise yield branch_false_func(input)
        input: The input array.
        branch_true_func: Callable for values at indices where condition is True.
        branch_false_func: Callable for values at indices where condition is False.
        branch_true_safe_value: Safe value to feed the true branch elsewhere.
        branch_false_safe_value: Safe value to feed the false branch elsewhere.
    """
    condition = np.asarray(condition, dtype=bool)
    input_1 = np.asarray(input, dtype=float)
    input_2 = input_1
    if branch_true_safe_value is not None:
        input_1 = np.where(condition, input_1, branch_true_safe_value)
    if branch_false_safe_value is not None:
        input_2 = np.where(~condition, input_2, branch_false_safe_value)
    return np.where(
        condition,
        branch_true_func(input_1),
        branch_false_func(input_2),
    )


def squeeze_scalar(array: ArrayLike) -> np.ndarray | np.float64:
    """Return 0-d results as numpy scalars and leave arrays untouched."""
    return np.asarray(array, dtype=float)[()]
