"""Contains reference computations used to validate the smoothed estimators.

- exact_qr solves small quantile regression instances by enumerating basic solutions.
- fd_check compares a gradient with central finite differences.
- bias_estimate measures the smoothing bias of GMQ fits by Monte Carlo.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
import math
from typing import Callable, Sequence

import numpy as np
import pandas as pd

from gmq.errors import DataError, GuardError, ParameterError
from gmq.losses import LossSpec, check_loss
from gmq.models import Dataset, empirical_risk, fit
from gmq.optimize import OptimizerConfig
from gmq.simulation import SimSpec, generate, replication_rng
from gmq.utils.parallel import ordered_map

LOGGER = logging.getLogger(__name__)

# Largest instance exact_qr accepts: C(60, 4) candidate bases.
MAX_ORACLE_SAMPLES = 60
MAX_ORACLE_COEFFICIENTS = 4
# Number of candidate bases solved per batch.
_CHUNK_SIZE = 16384
# Relative risk difference below which two candidates count as tied.
_TIE_TOLERANCE = 1e-12


@dataclasses.dataclass
class OracleResult:
    """An exact quantile regression solution."""

    beta_exact: np.ndarray
    # Check-loss empirical risk at beta_exact.
    objective: float
    # Observations interpolated by beta_exact, sorted.
    basis_indices: tuple[int, ...]


def exact_qr(dataset: Dataset, tau: float) -> OracleResult:
    """Solve min_beta 1/n sum_i check_loss(y_i - x_i^T beta) exactly.

    Some optimal solution of the quantile regression linear program
    interpolates q observations, q being the number of coefficients. All
    q-subsets are enumerated in lexicographic order; among candidates with
    equal risk the first one wins.

    Raises:
        GuardError: If n > 60 or there are more than 4 coefficients.
        DataError: If the design matrix is rank deficient.
    """
    design = dataset.design_matrix
    y = dataset.y
    n, q = design.shape
    if n > MAX_ORACLE_SAMPLES or q > MAX_ORACLE_COEFFICIENTS:
        raise GuardError(
            f"exact_qr handles n <= {MAX_ORACLE_SAMPLES} and at most "
            f"{MAX_ORACLE_COEFFICIENTS} coefficients, got n={n}, q={q}."
        )
    if np.linalg.matrix_rank(design) < q:
        raise DataError("Design matrix does not have full column rank.")

    best_risk = math.inf
    best_beta: np.ndarray | None = None
    best_basis: tuple[int, ...] = ()
    subsets = itertools.combinations(range(n), q)
    while True:
        chunk = np.array(list(itertools.islice(subsets, _CHUNK_SIZE)), dtype=int)
        if chunk.size == 0:
            break
        systems = design[chunk]
        singular_values = np.linalg.svd(systems, compute_uv=False)
        regular = singular_values[:, -1] > q * np.finfo(float).eps * singular_values[:, 0]
        if not np.any(regular):
            continue
        chunk = chunk[regular]
        betas = np.linalg.solve(systems[regular], y[chunk][..., None])[..., 0]
        risks = np.mean(check_loss(y[None, :] - betas @ design.T, tau), axis=1)

        chunk_best = float(risks.min())
        tolerance = _TIE_TOLERANCE * max(1.0, chunk_best)
        if best_beta is not None and chunk_best >= best_risk - tolerance:
            continue
        index = int(np.flatnonzero(risks <= chunk_best + tolerance)[0])
        best_risk = float(risks[index])
        best_beta = betas[index]
        best_basis = tuple(int(i) for i in chunk[index])

    if best_beta is None:
        raise DataError("Every candidate basis is singular.")
    objective = empirical_risk(dataset, best_beta, LossSpec(family="check", tau=tau))
    LOGGER.debug("Exact QR solution %s with risk %.6g.", best_beta, objective)
    return OracleResult(beta_exact=best_beta, objective=objective, basis_indices=best_basis)


def fd_check(
    f: Callable[[np.ndarray], float],
    grad: Callable[[np.ndarray], np.ndarray],
    points: Sequence[np.ndarray],
) -> float:
    """Return the worst relative error between grad and central differences of f.

    The step at beta is 1e-6 * max(1, ||beta||). The relative error at a point
    is ||fd - grad|| / max(||fd||, ||grad||), and 0 if both vanish.
    """
    worst = 0.0
    for point in points:
        beta = np.asarray(point, dtype=float)
        step = 1e-6 * max(1.0, float(np.linalg.norm(beta)))
        fd = np.empty_like(beta)
        for j in range(beta.shape[0]):
            plus, minus = beta.copy(), beta.copy()
            plus[j] += step
            minus[j] -= step
            fd[j] = (f(plus) - f(minus)) / (plus[j] - minus[j])
        analytic = np.asarray(grad(beta), dtype=float)
        scale = max(float(np.linalg.norm(fd)), float(np.linalg.norm(analytic)))
        if scale > 0.0:
            worst = max(worst, float(np.linalg.norm(fd - analytic)) / scale)
    return worst


def loglog_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least squares slope of log y against log x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise ParameterError("loglog_slope needs two equally long sequences of length >= 2.")
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise ParameterError("loglog_slope needs positive values.")
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def _bias_rate_slope(c_grid: np.ndarray, shift: np.ndarray) -> float:
    # Shift away from the smallest c, against c^2 |ln c|.
    rate = c_grid**2 * np.abs(np.log(c_grid))
    usable = (rate > 0.0) & (shift > 0.0)
    if np.count_nonzero(usable) < 2:
        return math.nan
    return loglog_slope(rate[usable], shift[usable])


def bias_estimate(
    template: SimSpec,
    c_grid: Sequence[float],
    n_large: int,
    replications: int,
    *,
    fit_intercept: bool = True,
    config: OptimizerConfig | None = None,
) -> pd.DataFrame:
    """Estimate the smoothing bias of GMQ fits on the homoskedastic model.

    Every replication draws one dataset of size n_large and fits it for every c,
    so the c values share their random numbers. Without an intercept the
    population minimizer is beta* for every c, so by default an intercept (whose
    true value is 0) is fitted and carries the bias.

    Returns:
        One row per c, sorted by c, with columns c, mean_error and sd_error
        (mean and standard deviation of ||beta_c - beta*||), bias
        (||mean beta_c - beta*||), shift (||mean (beta_c - beta_c0)|| for the
        smallest c0, which pairs the fits of a replication) and slope_fit, the
        log-log slope of shift against c^2 |ln c|.
    """
    if template.model != "homoskedastic":
        raise ParameterError("bias_estimate requires the homoskedastic model.")
    if replications < 1:
        raise ParameterError(f"replications must be at least 1, got {replications}.")
    c_values = np.sort(np.asarray(c_grid, dtype=float))
    if c_values.size == 0 or np.any(c_values <= 0.0):
        raise ParameterError("c_grid must hold positive values.")

    spec = dataclasses.replace(template, n=n_large)
    config = OptimizerConfig(tol_delta=1e-8, max_iter=20000) if config is None else config
    truth = np.concatenate([[0.0], spec.slopes]) if fit_intercept else spec.slopes

    def replicate(rep: int) -> np.ndarray:
        dataset, _ = generate(spec, replication_rng(spec.seed, rep))
        dataset = dataset.with_intercept(fit_intercept)
        estimates = [
            fit(dataset, LossSpec(family="gmq", tau=spec.tau, shape=float(c)), config).beta_hat
            for c in c_values
        ]
        LOGGER.debug("Bias replication %d done.", rep)
        return np.stack(estimates)

    # Shape (replications, len(c_grid), coefficients).
    estimates = np.stack(ordered_map(replicate, range(replications)))
    errors = np.linalg.norm(estimates - truth, axis=2)
    bias = np.linalg.norm(estimates.mean(axis=0) - truth, axis=1)
    shift = np.linalg.norm((estimates - estimates[:, :1]).mean(axis=0), axis=1)
    table = pd.DataFrame(
        {
            "c": c_values,
            "mean_error": errors.mean(axis=0),
            "sd_error": errors.std(axis=0, ddof=1) if replications > 1 else 0.0,
            "bias": bias,
            "shift": shift,
        }
    )
    table["slope_fit"] = _bias_rate_slope(c_values, shift)
    LOGGER.info("Bias scan over %d values of c done.", c_values.size)
    return table
