"""Contains the linear regression pipeline: data, standardization and fitting."""

from __future__ import annotations

from .dataset import Dataset
from .normalizers import Standardizer
from .regression import (
    FitMethod,
    FitResult,
    conquer_bandwidth,
    curvature_bound,
    default_c,
    empirical_grad,
    empirical_risk,
    fit,
    lipschitz_step,
)

__all__ = [
    "Dataset",
    "FitMethod",
    "FitResult",
    "Standardizer",
    "conquer_bandwidth",
    "curvature_bound",
    "default_c",
    "empirical_grad",
    "empirical_risk",
    "fit",
    "lipschitz_step",
]
