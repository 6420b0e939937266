"""Contains the regression dataset container."""

from __future__ import annotations

import dataclasses

import numpy as np

from gmq.errors import DataError


@dataclasses.dataclass(frozen=True, eq=False)
class Dataset:
    """Covariates X (n x p) and response y (n).

    When has_intercept is set, a leading constant column is added to X to form
    the design matrix; the intercept coefficient then comes first.
    """

    X: np.ndarray
    y: np.ndarray
    has_intercept: bool = False

    def __post_init__(self) -> None:
        """Validate shapes and finiteness."""
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=float).reshape(-1)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2:
            raise DataError(f"X must be a matrix, got shape {X.shape}.")
        if X.shape[0] < 1 or X.shape[1] < 1:
            raise DataError(f"X must have at least one row and column, got shape {X.shape}.")
        if y.shape[0] != X.shape[0]:
            raise DataError(f"X has {X.shape[0]} rows but y has {y.shape[0]} entries.")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
            raise DataError("Dataset contains non-finite values.")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        """Number of observations."""
        return self.X.shape[0]

    @property
    def p(self) -> int:
        """Number of covariate columns, excluding an added intercept."""
        return self.X.shape[1]

    @property
    def num_coefficients(self) -> int:
        """Length of the coefficient vector."""
        return self.p + int(self.has_intercept)

    @property
    def design_matrix(self) -> np.ndarray:
        """Covariates with the intercept column prepended when requested."""
        if self.has_intercept:
            return np.column_stack([np.ones(self.n), self.X])
        return self.X

    @property
    def column_names(self) -> list[str]:
        """CSV column names of the covariates."""
        return [f"x{j + 1}" for j in range(self.p)]

    def with_intercept(self, has_intercept: bool = True) -> Dataset:
        """Return the same data with the intercept flag changed."""
        return dataclasses.replace(self, has_intercept=has_intercept)
