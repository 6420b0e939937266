"""Contains the check loss and its generalized multiquadric (GMQ) smoothing.

The GMQ loss

    rho_{tau,c}(u) = ((2 tau - 1) u + sqrt(c^2 + u^2)) / 2

is the upper branch of the hyperbola (y - tau u)(y - (tau - 1) u) = c^2 / 4 whose
asymptotes are the two linear pieces of the check loss. All functions accept
scalars or arrays of residuals; scalars come back as numpy scalars.

The radical sqrt(c^2 + u^2) is always evaluated with np.hypot, which neither
overflows for |u| ~ 1e200 nor underflows for tiny c.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from gmq.errors import LossDomainError, ParameterError
from gmq.utils.robust import robust_where, squeeze_scalar

from .params import validate_shape, validate_tau


def check_loss(u: ArrayLike, tau: float) -> np.ndarray:
    """Compute the check loss u (tau - 1[u < 0])."""
    validate_tau(tau)
    u = np.asarray(u, dtype=float)
    return squeeze_scalar(u * (tau - (u < 0)))


def gmq_loss(u: ArrayLike, tau: float, c: float) -> np.ndarray:
    """Compute the GMQ loss; equals the check loss for c = 0."""
    validate_tau(tau)
    validate_shape(c)
    u = np.asarray(u, dtype=float)
    return squeeze_scalar(((2.0 * tau - 1.0) * u + np.hypot(c, u)) / 2.0)


def gmq_grad(u: ArrayLike, tau: float, c: float) -> np.ndarray:
    """Compute the first derivative of the GMQ loss.

    The derivative lies in (tau - 1, tau) and is strictly increasing in u.

    Raises:
        LossDomainError: If c = 0 and some residual is exactly 0, where the
            check loss only has a subdifferential.
    """
    validate_tau(tau)
    validate_shape(c)
    u = np.asarray(u, dtype=float)
    if c == 0.0 and np.any(u == 0.0):
        raise LossDomainError("Derivative of the check loss (c = 0) is undefined at u = 0.")
    return squeeze_scalar((2.0 * tau - 1.0) / 2.0 + u / (2.0 * np.hypot(c, u)))


def gmq_hess(u: ArrayLike, tau: float, c: float) -> np.ndarray:
    """Compute the second derivative c^2 / (2 (c^2 + u^2)^(3/2)).

    It does not depend on tau, peaks at 1 / (2c) for u = 0 and decays like |u|^-3.
    """
    validate_tau(tau)
    validate_shape(c)
    if c == 0.0:
        raise LossDomainError("Second derivative of the GMQ loss requires c > 0.")
    radius = np.hypot(c, np.asarray(u, dtype=float))
    return squeeze_scalar((c / radius) ** 2 / (2.0 * radius))


def smoothing_gap(u: ArrayLike, c: float) -> np.ndarray:
    """Compute gmq_loss - check_loss exactly, i.e. (sqrt(c^2 + u^2) - |u|) / 2.

    Evaluated as c^2 / (2 (sqrt(c^2 + u^2) + |u|)) which avoids cancellation for
    |u| >> c. The gap does not depend on tau.
    """
    validate_shape(c)
    abs_u = np.abs(np.asarray(u, dtype=float))
    if c == 0.0:
        return squeeze_scalar(np.zeros_like(abs_u))
    return squeeze_scalar(c**2 / (2.0 * (np.hypot(c, abs_u) + abs_u)))


def smoothing_gap_bound(u: ArrayLike, c: float) -> np.ndarray:
    """Upper bound on the smoothing gap: c / 2 for |u| <= c, c^2 / (2 |u|) otherwise."""
    validate_shape(c)
    if c == 0.0:
        raise ParameterError("The smoothing gap bound requires c > 0.")
    abs_u = np.abs(np.asarray(u, dtype=float))
    return squeeze_scalar(
        robust_where(
            abs_u <= c,
            abs_u,
            lambda x: np.full_like(x, c / 2.0),
            lambda x: c**2 / (2.0 * x),
            branch_false_safe_value=c,
        )
    )


def asymptote_gaps(u: ArrayLike, c: float) -> tuple[np.ndarray, np.ndarray]:
    """Distances from the GMQ curve to its asymptotes tau u and (tau - 1) u.

    The distances are (r - u) / 2 and (r + u) / 2 with r = sqrt(c^2 + u^2), so
    neither depends on tau. The smaller one is computed as c^2 / (2 (r + |u|)),
    which keeps the product identity d1 * d2 = c^2 / 4 exact to rounding.

    Returns:
        The distances to tau u and to (tau - 1) u.
    """
    validate_shape(c)
    u = np.asarray(u, dtype=float)
    abs_u = np.abs(u)
    large = (np.hypot(c, u) + abs_u) / 2.0
    if c == 0.0:
        small = np.zeros_like(abs_u)
    else:
        small = c**2 / (4.0 * large)
    positive = u >= 0
    to_upper = np.where(positive, small, large)
    to_lower = np.where(positive, large, small)
    return squeeze_scalar(to_upper), squeeze_scalar(to_lower)
