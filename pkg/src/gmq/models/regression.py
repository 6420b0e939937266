"""Contains empirical risks of linear quantile-type regression and the GD-BB fitter.

The fitter standardizes the design matrix, minimizes the empirical risk

    R(beta) = 1/n * sum_i loss(y_i - z_i^T beta)

in standardized coordinates and maps the minimizer back to the original
covariates.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from typing import Any, Callable, Literal

import numpy as np

from gmq.errors import DataError, ParameterError
from gmq.losses import LossSpec, create_loss
from gmq.optimize import OptimizeTrace, OptimizerConfig, bb_minimize, gd_minimize

from .dataset import Dataset
from .normalizers import Standardizer

LOGGER = logging.getLogger(__name__)

FitMethod = Literal["bb", "gd"]

# Smallest and largest shape returned by default_c.
DEFAULT_C_RANGE = (1e-3, 1.0)


@dataclasses.dataclass
class FitResult:
    """Outcome of a regression fit."""

    # Coefficients of the original covariates, intercept first when present.
    beta_hat: np.ndarray
    # Coefficients of the standardized design.
    beta_std: np.ndarray
    trace: OptimizeTrace
    loss_spec: LossSpec
    standardizer: Standardizer
    method: FitMethod = "bb"

    def to_dict(self) -> dict[str, Any]:
        """Convert to a JSON friendly dictionary."""
        return {
            "beta_hat": self.beta_hat.tolist(),
            "beta_std": self.beta_std.tolist(),
            "loss_spec": self.loss_spec.to_dict(),
            "method": self.method,
            "trace": self.trace.to_dict(),
        }


def _check_coefficients(dataset: Dataset, beta: np.ndarray) -> np.ndarray:
    beta = np.asarray(beta, dtype=float).reshape(-1)
    if beta.shape[0] != dataset.num_coefficients:
        raise ParameterError(
            f"beta has {beta.shape[0]} entries, expected {dataset.num_coefficients}."
        )
    return beta


def _risk(
    design: np.ndarray, y: np.ndarray, loss: Callable[[np.ndarray], np.ndarray]
) -> Callable[[np.ndarray], float]:
    def risk(beta: np.ndarray) -> float:
        return float(np.mean(loss(y - design @ beta)))

    return risk


def _risk_gradient(
    design: np.ndarray, y: np.ndarray, grad: Callable[[np.ndarray], np.ndarray]
) -> Callable[[np.ndarray], np.ndarray]:
    num_samples = design.shape[0]

    def risk_gradient(beta: np.ndarray) -> np.ndarray:
        residuals = y - design @ beta
        return -(design.T @ grad(residuals)) / num_samples

    return risk_gradient


def empirical_risk(dataset: Dataset, beta: np.ndarray, loss_spec: LossSpec) -> float:
    """Compute the mean loss over the residuals y - X beta.

    Non-differentiable families such as the check loss are accepted.
    """
    beta = _check_coefficients(dataset, beta)
    return _risk(dataset.design_matrix, dataset.y, create_loss(loss_spec).loss)(beta)


def empirical_grad(dataset: Dataset, beta: np.ndarray, loss_spec: LossSpec) -> np.ndarray:
    """Compute -1/n * sum_i x_i * loss'(y_i - x_i^T beta).

    Raises:
        ParameterError: If beta has the wrong length or the family has no gradient.
        LossDomainError: If the loss derivative is undefined at a residual.
    """
    beta = _check_coefficients(dataset, beta)
    grad = create_loss(loss_spec).grad
    if grad is None:
        raise ParameterError(f"Loss family {loss_spec.family} has no gradient.")
    return _risk_gradient(dataset.design_matrix, dataset.y, grad)(beta)


def curvature_bound(loss_spec: LossSpec) -> float:
    """Return the supremum of the loss second derivative over all residuals."""
    tau, shape = loss_spec.tau, loss_spec.shape
    if loss_spec.family == "gmq" and shape > 0.0:
        return 1.0 / (2.0 * shape)
    elif loss_spec.family in ("expectile", "smooth_expectile"):
        return 2.0 * max(tau, 1.0 - tau)
    elif loss_spec.family == "kth_power" and loss_spec.k == 2.0:
        return 2.0 * max(tau, 1.0 - tau)
    elif loss_spec.family == "conquer_gaussian" and shape > 0.0:
        return 1.0 / (shape * math.sqrt(2.0 * math.pi))
    elif loss_spec.family == "conquer_logistic" and shape > 0.0:
        return 1.0 / (4.0 * shape)
    raise ParameterError(
        f"Loss family {loss_spec.family} has no bounded second derivative; pass a step."
    )


def lipschitz_step(design: np.ndarray, loss_spec: LossSpec) -> float:
    """Return 1 / L for the Lipschitz constant L of the empirical risk gradient.

    L is the curvature bound of the loss times the largest eigenvalue of
    design^T design / n.
    """
    design = np.asarray(design, dtype=float)
    spectral = np.linalg.norm(design, ord=2) ** 2 / design.shape[0]
    return 1.0 / (curvature_bound(loss_spec) * spectral)


def fit(
    dataset: Dataset,
    loss_spec: LossSpec,
    config: OptimizerConfig | None = None,
    *,
    method: FitMethod = "bb",
    step: float | None = None,
    standardize: bool = True,
) -> FitResult:
    """Fit linear regression coefficients by minimizing the empirical risk.

    Args:
        dataset: The covariates and responses.
        loss_spec: A differentiable loss specification.
        config: Stopping rule and initial point. config.beta0 is taken in
            standardized coordinates and defaults to zero.
        method: "bb" for GD-BB, "gd" for fixed-step gradient descent.
        step: Step of the "gd" method. Defaults to lipschitz_step.
        standardize: Whether to standardize the design. When False the
            identity standardizer is used and beta_hat equals beta_std.

    Returns:
        The fit. A run that hits max_iter is returned with trace.converged False.

    Raises:
        ParameterError: If the loss is not differentiable or beta0 has the wrong length.
        DataError: If n < number of coefficients or a covariate has zero variance.
    """
    if not loss_spec.is_differentiable:
        raise ParameterError(
            f"Loss family {loss_spec.family} with shape {loss_spec.shape} is not smooth."
        )
    if dataset.n < dataset.num_coefficients:
        raise DataError(
            f"Need at least as many observations ({dataset.n}) "
            f"as coefficients ({dataset.num_coefficients})."
        )
    if method not in ("bb", "gd"):
        raise ParameterError(f"Unsupported fit method: {method}.")

    config = OptimizerConfig() if config is None else config
    if config.beta0 is None:
        config = dataclasses.replace(config, beta0=np.zeros(dataset.num_coefficients))
    elif config.beta0.shape[0] != dataset.num_coefficients:
        raise ParameterError(
            f"beta0 has {config.beta0.shape[0]} entries, expected {dataset.num_coefficients}."
        )

    design = dataset.design_matrix
    if standardize:
        standardizer = Standardizer.fit(design)
    else:
        standardizer = Standardizer.identity(design.shape[1])
    design_std = standardizer.transform(design)

    loss_functions = create_loss(loss_spec)
    assert loss_functions.grad is not None
    grad_fn = _risk_gradient(design_std, dataset.y, loss_functions.grad)

    if method == "bb":
        objective = _risk(design_std, dataset.y, loss_functions.loss)
        beta_std, trace = bb_minimize(grad_fn, config, objective)
    else:
        if step is None:
            step = lipschitz_step(design_std, loss_spec)
        beta_std, trace = gd_minimize(grad_fn, config, step)

    beta_hat = standardizer.coef_to_original(beta_std)
    LOGGER.info(
        "Fitted %s loss (tau=%.3g, shape=%.3g) with %s in %d iterations, converged=%s.",
        loss_spec.family,
        loss_spec.tau,
        loss_spec.shape,
        method,
        trace.iterations,
        trace.converged,
    )
    return FitResult(
        beta_hat=beta_hat,
        beta_std=beta_std,
        trace=trace,
        loss_spec=loss_spec,
        standardizer=standardizer,
        method=method,
    )


def _validate_sizes(n: int, p: int) -> None:
    if not (p >= 1 and n > p):
        raise ParameterError(f"Need n > p >= 1, got n={n}, p={p}.")


def default_c(n: int, p: int) -> float:
    """Return the shape ((p + ln n) / n)^(1/3), clamped to [1e-3, 1]."""
    _validate_sizes(n, p)
    c = ((p + math.log(n)) / n) ** (1.0 / 3.0)
    return min(max(c, DEFAULT_C_RANGE[0]), DEFAULT_C_RANGE[1])


def conquer_bandwidth(n: int, p: int) -> float:
    """Return the conquer bandwidth ((p + ln n) / n)^(2/5)."""
    _validate_sizes(n, p)
    return ((p + math.log(n)) / n) ** 0.4
