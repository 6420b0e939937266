"""Contains the loss specification shared by fitting, benchmarks and the CLI."""

from __future__ import annotations

import dataclasses
import math
from typing import Any, Literal

from gmq.errors import ParameterError

LossFamily = Literal[
    "check",  # Piecewise linear check loss, not differentiable at 0.
    "gmq",  # Generalized multiquadric smoothing of the check loss, shape = c.
    "expectile",  # Asymmetric least squares.
    "smooth_expectile",  # MQ smoothing of asymmetric least squares, shape = c.
    "kth_power",  # Asymmetric |u|^k loss, 1 < k <= 2.
    "smooth_kth_power",  # MQ smoothing of the kth power loss, shape = c.
    "conquer_gaussian",  # Check loss convolved with a Gaussian kernel, shape = h.
    "conquer_logistic",  # Check loss convolved with a logistic kernel, shape = h.
]
ConquerKernel = Literal["gaussian", "logistic"]

LOSS_FAMILIES: tuple[LossFamily, ...] = (
    "check",
    "gmq",
    "expectile",
    "smooth_expectile",
    "kth_power",
    "smooth_kth_power",
    "conquer_gaussian",
    "conquer_logistic",
)
# Families whose smoothness comes from the shape parameter.
SHAPED_FAMILIES = frozenset(
    {"gmq", "smooth_expectile", "smooth_kth_power", "conquer_gaussian", "conquer_logistic"}
)
KTH_POWER_FAMILIES = frozenset({"kth_power", "smooth_kth_power"})


def validate_tau(tau: float) -> None:
    """Raise ParameterError unless 0 < tau < 1."""
    if not (math.isfinite(tau) and 0.0 < tau < 1.0):
        raise ParameterError(f"tau must lie in (0, 1), got {tau}.")


def validate_shape(shape: float, name: str = "c") -> None:
    """Raise ParameterError unless shape is finite and nonnegative."""
    if not (math.isfinite(shape) and shape >= 0.0):
        raise ParameterError(f"{name} must be finite and nonnegative, got {shape}.")


def validate_power(k: float) -> None:
    """Raise ParameterError unless 1 < k <= 2."""
    if not (math.isfinite(k) and 1.0 < k <= 2.0):
        raise ParameterError(f"k must lie in (1, 2], got {k}.")


@dataclasses.dataclass(frozen=True)
class LossSpec:
    """A loss family together with its quantile level and shape parameters."""

    family: LossFamily = "gmq"
    tau: float = 0.5
    # Shape c for the MQ families, bandwidth h for the conquer families.
    # Ignored by check, expectile and kth_power.
    shape: float = 0.0
    # Power of the kth power families.
    k: float = 1.5

    def __post_init__(self) -> None:
        """Validate the specification."""
        if self.family not in LOSS_FAMILIES:
            raise ParameterError(f"Unsupported loss family: {self.family}.")
        validate_tau(self.tau)
        validate_shape(self.shape, "h" if self.family.startswith("conquer") else "c")
        if self.family in KTH_POWER_FAMILIES:
            validate_power(self.k)

    @property
    def is_differentiable(self) -> bool:
        """Whether the empirical risk has a single-valued gradient everywhere."""
        if self.family == "check":
            return False
        if self.family in SHAPED_FAMILIES:
            return self.shape > 0.0
        return True

    def to_dict(self) -> dict[str, Any]:
        """Convert to a JSON friendly dictionary."""
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> LossSpec:
        """Create a LossSpec from a dictionary produced by to_dict."""
        return cls(**data)
