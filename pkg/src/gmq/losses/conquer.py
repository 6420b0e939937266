"""Contains convolution smoothed (conquer) check losses.

The check loss convolved with a kernel K_h of bandwidth h has derivative
tau - K(-u / h), with K the kernel's CDF. Only the Gaussian and logistic kernels
are provided. The standard normal CDF is scipy's ndtr (Cephes erf/erfc rational
approximations), the logistic CDF is scipy's expit.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from gmq.errors import ParameterError
from gmq.utils.robust import squeeze_scalar

from .params import ConquerKernel, validate_tau

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _validate(tau: float, h: float, kernel: str) -> None:
    validate_tau(tau)
    if not (math.isfinite(h) and h > 0.0):
        raise ParameterError(f"Bandwidth h must be positive, got {h}.")
    if kernel not in ("gaussian", "logistic"):
        raise ParameterError(f"Unsupported conquer kernel: {kernel}.")


def _normal_pdf(z: np.ndarray) -> np.ndarray:
    return _INV_SQRT_2PI * np.exp(-0.5 * z**2)


def conquer_loss(u: ArrayLike, tau: float, h: float, kernel: ConquerKernel) -> np.ndarray:
    """Compute the convolution smoothed check loss."""
    _validate(tau, h, kernel)
    u = np.asarray(u, dtype=float)
    z = u / h
    if kernel == "gaussian":
        return squeeze_scalar((tau - special.ndtr(-z)) * u + h * _normal_pdf(z))
    return squeeze_scalar(tau * u + h * np.logaddexp(0.0, -z))


def conquer_grad(u: ArrayLike, tau: float, h: float, kernel: ConquerKernel) -> np.ndarray:
    """Compute tau - Phi(-u / h) (Gaussian) or tau - 1 / (1 + exp(u / h)) (logistic)."""
    _validate(tau, h, kernel)
    z = np.asarray(u, dtype=float) / h
    if kernel == "gaussian":
        return squeeze_scalar(tau - special.ndtr(-z))
    return squeeze_scalar(tau - special.expit(-z))


def conquer_hess(u: ArrayLike, tau: float, h: float, kernel: ConquerKernel) -> np.ndarray:
    """Compute the kernel density at u, scaled by 1 / h."""
    _validate(tau, h, kernel)
    z = np.asarray(u, dtype=float) / h
    if kernel == "gaussian":
        return squeeze_scalar(_normal_pdf(z) / h)
    return squeeze_scalar(special.expit(z) * special.expit(-z) / h)
