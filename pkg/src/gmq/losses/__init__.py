"""Contains the loss families and a factory binding them to a LossSpec."""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from gmq.errors import ParameterError

from .conquer import conquer_grad, conquer_hess, conquer_loss
from .expectile import (
    expectile_grad,
    expectile_hess,
    expectile_loss,
    kth_power_grad,
    kth_power_hess,
    kth_power_loss,
    smooth_als_grad,
    smooth_als_hess,
    smooth_als_loss,
    smooth_expectile_grad,
    smooth_expectile_hess,
    smooth_expectile_loss,
    smooth_kth_power_grad,
    smooth_kth_power_hess,
    smooth_kth_power_loss,
)
from .params import LOSS_FAMILIES, ConquerKernel, LossFamily, LossSpec
from .quantile import (
    asymptote_gaps,
    check_loss,
    gmq_grad,
    gmq_hess,
    gmq_loss,
    smoothing_gap,
    smoothing_gap_bound,
)

ResidualFunction = Callable[[np.ndarray], np.ndarray]


class LossFunctions(NamedTuple):
    """Loss, first and second derivative of a loss family, as functions of residuals."""

    loss: ResidualFunction
    grad: ResidualFunction | None
    hess: ResidualFunction | None


def create_loss(spec: LossSpec) -> LossFunctions:
    """Bind the loss family of spec to its parameters.

    Args:
        spec: The loss specification.

    Returns:
        The loss and its derivatives. The check loss has no derivatives.
    """
    tau, shape, k = spec.tau, spec.shape, spec.k
    if spec.family == "check":
        return LossFunctions(lambda u: check_loss(u, tau), None, None)
    elif spec.family == "gmq":
        return LossFunctions(
            lambda u: gmq_loss(u, tau, shape),
            lambda u: gmq_grad(u, tau, shape),
            lambda u: gmq_hess(u, tau, shape),
        )
    elif spec.family == "expectile":
        return LossFunctions(
            lambda u: expectile_loss(u, tau),
            lambda u: expectile_grad(u, tau),
            lambda u: expectile_hess(u, tau),
        )
    elif spec.family == "smooth_expectile":
        return LossFunctions(
            lambda u: smooth_als_loss(u, tau, shape),
            lambda u: smooth_als_grad(u, tau, shape),
            lambda u: smooth_als_hess(u, tau, shape),
        )
    elif spec.family == "kth_power":
        return LossFunctions(
            lambda u: kth_power_loss(u, tau, k),
            lambda u: kth_power_grad(u, tau, k),
            lambda u: kth_power_hess(u, tau, k),
        )
    elif spec.family == "smooth_kth_power":
        return LossFunctions(
            lambda u: smooth_kth_power_loss(u, tau, shape, k),
            lambda u: smooth_kth_power_grad(u, tau, shape, k),
            lambda u: smooth_kth_power_hess(u, tau, shape, k),
        )
    elif spec.family in ("conquer_gaussian", "conquer_logistic"):
        kernel: ConquerKernel = "gaussian" if spec.family == "conquer_gaussian" else "logistic"
        return LossFunctions(
            lambda u: conquer_loss(u, tau, shape, kernel),
            lambda u: conquer_grad(u, tau, shape, kernel),
            lambda u: conquer_hess(u, tau, shape, kernel),
        )
    else:
        raise ParameterError(f"Unsupported loss family: {spec.family}.")


__all__ = [
    "LOSS_FAMILIES",
    "LossFamily",
    "LossFunctions",
    "LossSpec",
    "asymptote_gaps",
    "check_loss",
    "conquer_grad",
    "conquer_hess",
    "conquer_loss",
    "create_loss",
    "expectile_grad",
    "expectile_hess",
    "expectile_loss",
    "gmq_grad",
    "gmq_hess",
    "gmq_loss",
    "kth_power_grad",
    "kth_power_hess",
    "kth_power_loss",
    "smooth_als_grad",
    "smooth_als_hess",
    "smooth_als_loss",
    "smooth_expectile_grad",
    "smooth_expectile_hess",
    "smooth_expectile_loss",
    "smooth_kth_power_grad",
    "smooth_kth_power_hess",
    "smooth_kth_power_loss",
    "smoothing_gap",
    "smoothing_gap_bound",
]
