"""Contains the covariate standardizer used before gradient descent."""

from __future__ import annotations

import dataclasses

import numpy as np

from gmq.errors import DataError


@dataclasses.dataclass(frozen=True, eq=False)
class Standardizer:
    """Map design columns to zero mean and unit variance.

    Columns equal to one everywhere are intercept columns and are left alone.
    Centring is only applied when an intercept column exists, because without
    one the shift cannot be absorbed and the model would change.
    """

    means: np.ndarray
    sds: np.ndarray
    # Index of the constant-one column of the design matrix, if any.
    intercept_index: int | None = None
    sd_inv: np.ndarray = dataclasses.field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Validate the standardizer."""
        means = np.asarray(self.means, dtype=float).reshape(-1)
        sds = np.asarray(self.sds, dtype=float).reshape(-1)
        if means.shape != sds.shape:
            raise DataError("means and sds must have the same length.")
        if not np.all(sds > 0.0):
            raise DataError("Standard deviations must be strictly positive.")
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "sds", sds)
        # We use inverse sds to turn divisions into multiplications.
        object.__setattr__(self, "sd_inv", 1.0 / sds)

    @classmethod
    def fit(cls, design: np.ndarray) -> Standardizer:
        """Estimate means and standard deviations from a design matrix."""
        design = np.asarray(design, dtype=float)
        ones = np.all(design == 1.0, axis=0)
        if np.count_nonzero(ones) > 1:
            raise DataError("Design matrix contains more than one intercept column.")
        intercept_index = int(np.argmax(ones)) if ones.any() else None

        sds = design.std(axis=0)
        sds[ones] = 1.0
        constant = np.flatnonzero(sds == 0.0)
        if constant.size > 0:
            raise DataError(f"Design columns {constant.tolist()} have zero variance.")

        if intercept_index is None:
            means = np.zeros(design.shape[1])
        else:
            means = design.mean(axis=0)
            means[intercept_index] = 0.0
        return cls(means=means, sds=sds, intercept_index=intercept_index)

    @classmethod
    def identity(cls, num_columns: int) -> Standardizer:
        """Create a standardizer that leaves the design unchanged."""
        return cls(means=np.zeros(num_columns), sds=np.ones(num_columns))

    def transform(self, design: np.ndarray) -> np.ndarray:
        """Standardize the columns of a design matrix."""
        return (design - self.means) * self.sd_inv

    def inverse_transform(self, design_std: np.ndarray) -> np.ndarray:
        """Undo transform."""
        return design_std * self.sds + self.means

    def coef_to_original(self, beta_std: np.ndarray) -> np.ndarray:
        """Map coefficients of the standardized design back to the original design."""
        beta = np.asarray(beta_std, dtype=float) * self.sd_inv
        if self.intercept_index is not None:
            beta[self.intercept_index] -= self.means @ beta
        return beta

    def coef_to_standardized(self, beta: np.ndarray) -> np.ndarray:
        """Map coefficients of the original design to the standardized design."""
        beta = np.asarray(beta, dtype=float)
        beta_std = beta * self.sds
        if self.intercept_index is not None:
            beta_std[self.intercept_index] += self.means @ beta
        return beta_std
