"""Contains gradient descent with Barzilai-Borwein step sizes (GD-BB) and vanilla GD.

Both minimizers only need the gradient of a smooth convex objective. They stop
as soon as the Euclidean norm of the gradient drops below tol_delta.

Plain GD-BB is not globally convergent: on empirical risks of small samples the
gradient is close to a staircase and the iterates can cycle. When bb_minimize
also receives the objective, every step goes through a nonmonotone
(Grippo-Lampariello-Lucidi) acceptance test: a step is kept if the objective
drops sufficiently below the largest of the last nonmonotone_memory values and
is halved otherwise. BB steps that behave are accepted unchanged.
"""

from __future__ import annotations

import collections
import dataclasses
import logging
import math
import time
from typing import Any, Callable, Literal

import numpy as np

from gmq.errors import OptimizationError, ParameterError

LOGGER = logging.getLogger(__name__)

GradientFunction = Callable[[np.ndarray], np.ndarray]
ObjectiveFunction = Callable[[np.ndarray], float]
StopReason = Literal["converged", "max_iter", "stalled"]

# BB denominators below this value select the unit fallback step.
DENOMINATOR_GUARD = 1e-30
# Sufficient decrease constant of the nonmonotone acceptance test.
ARMIJO_GAMMA = 1e-4
MAX_BACKTRACKS = 60


@dataclasses.dataclass
class OptimizerConfig:
    """Parameters for bb_minimize and gd_minimize."""

    # Initial point. The regression fitter fills in the zero vector when None.
    beta0: np.ndarray | None = None
    # Stop once ||grad||_2 < tol_delta.
    tol_delta: float = 1e-6
    max_iter: int = 5000
    # Upper bound on BB step sizes.
    step_cap: float = 100.0
    # Objective values remembered by the acceptance test of bb_minimize. 0 disables it.
    nonmonotone_memory: int = 10

    def __post_init__(self) -> None:
        """Validate the configuration."""
        if not (math.isfinite(self.tol_delta) and self.tol_delta > 0.0):
            raise ParameterError(f"tol_delta must be positive, got {self.tol_delta}.")
        if self.max_iter < 2:
            raise ParameterError(f"max_iter must be at least 2, got {self.max_iter}.")
        if not (math.isfinite(self.step_cap) and self.step_cap > 0.0):
            raise ParameterError(f"step_cap must be positive, got {self.step_cap}.")
        if self.nonmonotone_memory < 0:
            raise ParameterError(
                f"nonmonotone_memory must be nonnegative, got {self.nonmonotone_memory}."
            )
        if self.beta0 is not None:
            self.beta0 = np.array(self.beta0, dtype=float).reshape(-1)
            if not np.all(np.isfinite(self.beta0)):
                raise ParameterError("beta0 must be finite.")


@dataclasses.dataclass
class OptimizeTrace:
    """Per-iteration record of a minimizer run.

    grad_norms[t] is the gradient norm after update t + 1 and step_sizes[t] the
    step used for that update, so both have length iterations.
    """

    iterations: int
    grad_norms: np.ndarray
    step_sizes: np.ndarray
    converged: bool
    wall_time: float
    stop_reason: StopReason

    def to_dict(self) -> dict[str, Any]:
        """Convert to a JSON friendly dictionary."""
        return {
            "iterations": self.iterations,
            "grad_norms": self.grad_norms.tolist(),
            "step_sizes": self.step_sizes.tolist(),
            "converged": self.converged,
            "wall_time": self.wall_time,
            "stop_reason": self.stop_reason,
        }


class _NonmonotoneSearch:
    """Halve a trial step until the objective passes the nonmonotone test."""

    def __init__(self, objective: ObjectiveFunction, beta0: np.ndarray, memory: int):
        self.objective = objective
        self.history: collections.deque[float] = collections.deque(maxlen=memory)
        self.history.append(self._value(beta0, 0))

    def _value(self, beta: np.ndarray, iteration: int) -> float:
        value = float(self.objective(beta))
        if math.isnan(value) or value == -math.inf:
            raise OptimizationError("Objective is not a number", iteration)
        return value

    def step(
        self, beta: np.ndarray, grad: np.ndarray, step: float, iteration: int
    ) -> tuple[np.ndarray, float] | None:
        reference = max(self.history)
        # Rounding noise of the objective must not reject steps near the optimum.
        slack = 1e-13 * (1.0 + abs(reference))
        grad_sq = float(grad @ grad)
        for _ in range(MAX_BACKTRACKS):
            candidate = beta - step * grad
            value = self._value(candidate, iteration)
            if value <= reference - ARMIJO_GAMMA * step * grad_sq + slack:
                self.history.append(value)
                return candidate, step
            step *= 0.5
        return None


def _initial_point(config: OptimizerConfig) -> np.ndarray:
    if config.beta0 is None:
        raise ParameterError("OptimizerConfig.beta0 is required.")
    return config.beta0.copy()


def _evaluate(grad_fn: GradientFunction, beta: np.ndarray, iteration: int) -> np.ndarray:
    grad = np.asarray(grad_fn(beta), dtype=float)
    if grad.shape != beta.shape:
        raise ParameterError(f"Gradient has shape {grad.shape}, expected {beta.shape}.")
    if not np.all(np.isfinite(grad)):
        raise OptimizationError("Gradient is not finite", iteration)
    return grad


def _make_trace(
    grad_norms: list[float],
    step_sizes: list[float],
    last_norm: float,
    tol_delta: float,
    start: float,
    stop_reason: StopReason,
) -> OptimizeTrace:
    return OptimizeTrace(
        iterations=len(grad_norms),
        grad_norms=np.asarray(grad_norms, dtype=float),
        step_sizes=np.asarray(step_sizes, dtype=float),
        converged=last_norm < tol_delta,
        wall_time=time.perf_counter() - start,
        stop_reason=stop_reason,
    )


def bb_minimize(
    grad_fn: GradientFunction,
    config: OptimizerConfig,
    objective: ObjectiveFunction | None = None,
) -> tuple[np.ndarray, OptimizeTrace]:
    """Minimize a smooth convex function with GD-BB.

    The first update is a unit gradient step. Afterwards, with
    delta = beta_t - beta_{t-1} and g = grad(beta_t) - grad(beta_{t-1}), the step is
    min(<delta, delta> / <delta, g>, <delta, g> / <g, g>, step_cap) when the
    first ratio is positive and 1 otherwise, including when g vanishes. A vanishing g
    does not end the run; only the gradient norm does. With an objective, trial
    steps must pass a nonmonotone (Grippo-Lampariello-Lucidi) acceptance test, which
    plain GD-BB lacks. A run ends with stop_reason "stalled" when no halving of a
    trial step passes it.

    Args:
        grad_fn: Gradient of the objective. Must be deterministic in beta.
        config: Initial point and stopping rule.
        objective: The objective itself. When given and
            config.nonmonotone_memory > 0, trial steps are halved until they pass
            the nonmonotone acceptance test; otherwise they are taken as is.

    Returns:
        The last iterate and the trace of the run.

    Raises:
        OptimizationError: If a gradient or objective evaluation is not finite.
    """
    start = time.perf_counter()
    beta_prev = _initial_point(config)
    grad_prev = _evaluate(grad_fn, beta_prev, 0)
    grad_norms: list[float] = []
    step_sizes: list[float] = []
    search = None
    if objective is not None and config.nonmonotone_memory > 0:
        search = _NonmonotoneSearch(objective, beta_prev, config.nonmonotone_memory)

    def advance(
        beta: np.ndarray, grad: np.ndarray, step: float
    ) -> tuple[np.ndarray, float] | None:
        if search is None:
            return beta - step * grad, step
        return search.step(beta, grad, step, len(grad_norms) + 1)

    last_norm = float(np.linalg.norm(grad_prev))
    if last_norm < config.tol_delta:
        return beta_prev, _make_trace(
            grad_norms, step_sizes, last_norm, config.tol_delta, start, "converged"
        )

    # Bootstrap with a unit gradient step.
    update = advance(beta_prev, grad_prev, 1.0)
    if update is None:
        return beta_prev, _make_trace(
            grad_norms, step_sizes, last_norm, config.tol_delta, start, "stalled"
        )
    beta, step = update
    grad = _evaluate(grad_fn, beta, 1)
    step_sizes.append(step)
    grad_norms.append(float(np.linalg.norm(grad)))

    stop_reason: StopReason = "max_iter"
    while True:
        if grad_norms[-1] < config.tol_delta:
            stop_reason = "converged"
            break
        if len(grad_norms) >= config.max_iter:
            break

        delta = beta - beta_prev
        grad_diff = grad - grad_prev
        grad_diff_sq = float(grad_diff @ grad_diff)
        # An unchanged gradient (linear stretch of a smoothed check loss) takes the unit step.
        cross = float(delta @ grad_diff)
        if cross > DENOMINATOR_GUARD and grad_diff_sq > DENOMINATOR_GUARD:
            step = min(float(delta @ delta) / cross, cross / grad_diff_sq, config.step_cap)
        else:
            step = 1.0

        update = advance(beta, grad, step)
        if update is None:
            stop_reason = "stalled"
            break
        beta_prev, grad_prev = beta, grad
        beta, step = update
        grad = _evaluate(grad_fn, beta, len(grad_norms) + 1)
        step_sizes.append(step)
        grad_norms.append(float(np.linalg.norm(grad)))

    trace = _make_trace(
        grad_norms, step_sizes, grad_norms[-1], config.tol_delta, start, stop_reason
    )
    LOGGER.debug(
        "GD-BB stopped after %d iterations (%s), |grad| = %.3e.",
        trace.iterations,
        stop_reason,
        grad_norms[-1],
    )
    return beta, trace


def gd_minimize(
    grad_fn: GradientFunction, config: OptimizerConfig, step: float
) -> tuple[np.ndarray, OptimizeTrace]:
    """Minimize with fixed-step gradient descent beta <- beta - step * grad(beta).

    A zero step is accepted and leaves beta0 unchanged until max_iter.
    """
    if not (math.isfinite(step) and step >= 0.0):
        raise ParameterError(f"step must be finite and nonnegative, got {step}.")
    start = time.perf_counter()
    beta = _initial_point(config)
    grad = _evaluate(grad_fn, beta, 0)
    grad_norms: list[float] = []
    step_sizes: list[float] = []

    last_norm = float(np.linalg.norm(grad))
    if last_norm < config.tol_delta:
        return beta, _make_trace(
            grad_norms, step_sizes, last_norm, config.tol_delta, start, "converged"
        )

    stop_reason: StopReason = "max_iter"
    while len(grad_norms) < config.max_iter:
        beta = beta - step * grad
        grad = _evaluate(grad_fn, beta, len(grad_norms) + 1)
        step_sizes.append(step)
        grad_norms.append(float(np.linalg.norm(grad)))
        if grad_norms[-1] < config.tol_delta:
            stop_reason = "converged"
            break

    trace = _make_trace(
        grad_norms, step_sizes, grad_norms[-1], config.tol_delta, start, stop_reason
    )
    LOGGER.debug(
        "GD stopped after %d iterations (%s), |grad| = %.3e.",
        trace.iterations,
        stop_reason,
        grad_norms[-1],
    )
    return beta, trace
