"""Contains expectile and kth power expectile losses and their MQ smoothings.

Three smoothings live here:

- smooth_expectile_*: the antiderivative of 2 * gmq_loss. Its derivative is
  positive everywhere, so it tracks tau u^2 for u > 0 but decreases without
  bound for u -> -inf. It is kept for its identities, not for fitting.
- smooth_als_*: asymmetric least squares written as ((2 tau - 1) u|u| + u^2) / 2
  with |u| replaced by sqrt(c^2 + u^2). Strictly convex; this is what the
  "smooth_expectile" loss family fits with.
- smooth_kth_power_*: ((2 tau - 1) s(u) + sqrt(c^2 + |u|^(2k))) / 2 with the
  sign extension s(u) = sign(u) |u|^k. Convex wherever |u|^k >= c, but not in a
  small neighbourhood of 0 when tau != 0.5.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from gmq.errors import LossDomainError
from gmq.utils.robust import squeeze_scalar

from .params import validate_power, validate_shape, validate_tau
from .quantile import gmq_grad, gmq_loss


def _asymmetric_weights(u: np.ndarray, tau: float) -> np.ndarray:
    return np.where(u < 0, 1.0 - tau, tau)


def _scaled_asinh(u: np.ndarray, c: float) -> np.ndarray:
    # c^2 asinh(u / c) == c^2 (ln|u + sqrt(c^2 + u^2)| - ln c), cancellation free.
    if c == 0.0:
        return np.zeros_like(u)
    return c**2 * np.arcsinh(u / c)


def expectile_loss(u: ArrayLike, tau: float) -> np.ndarray:
    """Compute the asymmetric least squares loss tau u^2 / (1 - tau) u^2."""
    validate_tau(tau)
    u = np.asarray(u, dtype=float)
    return squeeze_scalar(_asymmetric_weights(u, tau) * u**2)


def expectile_grad(u: ArrayLike, tau: float) -> np.ndarray:
    """Compute the first derivative of the expectile loss."""
    validate_tau(tau)
    u = np.asarray(u, dtype=float)
    return squeeze_scalar(2.0 * _asymmetric_weights(u, tau) * u)


def expectile_hess(u: ArrayLike, tau: float) -> np.ndarray:
    """Compute the (piecewise constant) second derivative of the expectile loss."""
    validate_tau(tau)
    u = np.asarray(u, dtype=float)
    return squeeze_scalar(2.0 * _asymmetric_weights(u, tau))


def smooth_expectile_loss(u: ArrayLike, tau: float, c: float) -> np.ndarray:
    """Compute the antiderivative of 2 * gmq_loss that vanishes at u = 0.

    (2 tau - 1) u^2 / 2 + (u sqrt(c^2 + u^2) + c^2 ln|u + sqrt(c^2 + u^2)|) / 2 - c^2 ln(c) / 2
    """
    validate_tau(tau)
    validate_shape(c)
    u = np.asarray(u, dtype=float)
    radius = np.hypot(c, u)
    return squeeze_scalar(
        (2.0 * tau - 1.0) * u**2 / 2.0 + (u * radius + _scaled_asinh(u, c)) / 2.0
    )


def smooth_expectile_grad(u: ArrayLike, tau: float, c: float) -> np.ndarray:
    """Compute the derivative of smooth_expectile_loss, i.e. 2 * gmq_loss."""
    return squeeze_scalar(2.0 * np.asarray(gmq_loss(u, tau, c)))


def smooth_expectile_hess(u: ArrayLike, tau: float, c: float) -> np.ndarray:
    """Compute the second derivative of smooth_expectile_loss, i.e. 2 * gmq_grad."""
    return squeeze_scalar(2.0 * np.asarray(gmq_grad(u, tau, c)))


def smooth_als_loss(u: ArrayLike, tau: float, c: float) -> np.ndarray:
    """Compute the convex MQ smoothing of asymmetric least squares.

    ((2 tau - 1) (u sqrt(c^2 + u^2) + c^2 asinh(u / c)) + u^2) / 2, which equals
    expectile_loss for c = 0.
    """
    validate_tau(tau)
    validate_shape(c)
    u = np.asarray(u, dtype=float)
    radius = np.hypot(c, u)
    return squeeze_scalar(((2.0 * tau - 1.0) * (u * radius + _scaled_asinh(u, c)) + u**2) / 2.0)


def smooth_als_grad(u: ArrayLike, tau: float, c: float) -> np.ndarray:
    """Compute the first derivative (2 tau - 1) sqrt(c^2 + u^2) + u."""
    validate_tau(tau)
    validate_shape(c)
    u = np.asarray(u, dtype=float)
    return squeeze_scalar((2.0 * tau - 1.0) * np.hypot(c, u) + u)


def smooth_als_hess(u: ArrayLike, tau: float, c: float) -> np.ndarray:
    """Compute the second derivative 1 + (2 tau - 1) u / sqrt(c^2 + u^2)."""
    validate_tau(tau)
    validate_shape(c)
    if c == 0.0:
        raise LossDomainError("Second derivative of the smoothed ALS loss requires c > 0.")
    u = np.asarray(u, dtype=float)
    return squeeze_scalar(1.0 + (2.0 * tau - 1.0) * u / np.hypot(c, u))


def kth_power_loss(u: ArrayLike, tau: float, k: float) -> np.ndarray:
    """Compute the kth power expectile loss tau |u|^k / (1 - tau) |u|^k."""
    validate_tau(tau)
    validate_power(k)
    u = np.asarray(u, dtype=float)
    return squeeze_scalar(_asymmetric_weights(u, tau) * np.abs(u) ** k)


def kth_power_grad(u: ArrayLike, tau: float, k: float) -> np.ndarray:
    """Compute the first derivative of the kth power expectile loss."""
    validate_tau(tau)
    validate_power(k)
    u = np.asarray(u, dtype=float)
    return squeeze_scalar(_asymmetric_weights(u, tau) * k * np.sign(u) * np.abs(u) ** (k - 1.0))


def kth_power_hess(u: ArrayLike, tau: float, k: float) -> np.ndarray:
    """Compute the second derivative of the kth power expectile loss.

    Raises:
        LossDomainError: If k < 2 and some residual is 0, where it is infinite.
    """
    validate_tau(tau)
    validate_power(k)
    u = np.asarray(u, dtype=float)
    if k < 2.0 and np.any(u == 0.0):
        raise LossDomainError(f"Second derivative of |u|^{k} is infinite at u = 0.")
    return squeeze_scalar(_asymmetric_weights(u, tau) * k * (k - 1.0) * np.abs(u) ** (k - 2.0))


def smooth_kth_power_loss(u: ArrayLike, tau: float, c: float, k: float) -> np.ndarray:
    """Compute ((2 tau - 1) sign(u) |u|^k + sqrt(c^2 + |u|^(2k))) / 2."""
    validate_tau(tau)
    validate_shape(c)
    validate_power(k)
    u = np.asarray(u, dtype=float)
    power = np.abs(u) ** k
    return squeeze_scalar(((2.0 * tau - 1.0) * np.sign(u) * power + np.hypot(c, power)) / 2.0)


def _kth_power_terms(u: np.ndarray, c: float, k: float) -> tuple[np.ndarray, np.ndarray]:
    power = np.abs(u) ** k
    radius = np.hypot(c, power)
    # s(u) / r with the 0 / 0 case (c = 0, u = 0) mapped to 0.
    ratio = np.sign(u) * power / np.where(radius > 0.0, radius, 1.0)
    return ratio, radius


def smooth_kth_power_grad(u: ArrayLike, tau: float, c: float, k: float) -> np.ndarray:
    """Compute the first derivative k |u|^(k-1) ((2 tau - 1) + s(u) / r) / 2."""
    validate_tau(tau)
    validate_shape(c)
    validate_power(k)
    u = np.asarray(u, dtype=float)
    ratio, _ = _kth_power_terms(u, c, k)
    return squeeze_scalar(k * np.abs(u) ** (k - 1.0) * ((2.0 * tau - 1.0) + ratio) / 2.0)


def smooth_kth_power_hess(u: ArrayLike, tau: float, c: float, k: float) -> np.ndarray:
    """Compute the second derivative of smooth_kth_power_loss.

    Raises:
        LossDomainError: If c = 0, or if some residual is 0 while the second
            derivative is not single-valued there (k < 2 or tau != 0.5).
    """
    validate_tau(tau)
    validate_shape(c)
    validate_power(k)
    if c == 0.0:
        raise LossDomainError("Second derivative of the smoothed kth power loss requires c > 0.")
    u = np.asarray(u, dtype=float)
    if (k < 2.0 or tau != 0.5) and np.any(u == 0.0):
        raise LossDomainError("Second derivative of the smoothed kth power loss is undefined at 0.")
    ratio, radius = _kth_power_terms(u, c, k)
    abs_u = np.abs(u)
    bending = k * (k - 1.0) * abs_u ** (k - 2.0) * np.sign(u) * ((2.0 * tau - 1.0) + ratio) / 2.0
    curvature = k**2 * abs_u ** (2.0 * k - 2.0) * c**2 / (2.0 * radius**3)
    return squeeze_scalar(bending + curvature)
