"""Contains the timing and estimation-error experiments behind the bench and scan commands."""

from __future__ import annotations

import dataclasses
import logging
import statistics
import time
from typing import Any, Callable, Literal, Sequence

import numpy as np
import pandas as pd

from gmq.errors import ParameterError
from gmq.losses import LossSpec, conquer_grad, conquer_hess, gmq_grad, gmq_hess
from gmq.losses.params import validate_power, validate_tau
from gmq.models import conquer_bandwidth, default_c, fit
from gmq.optimize import OptimizerConfig
from gmq.oracle import loglog_slope
from gmq.simulation import (
    ERROR_DISTS,
    MODELS,
    ErrorDist,
    ModelKind,
    SimSpec,
    generate,
    make_rng,
    replication_rng,
)
from gmq.utils.parallel import ordered_map

LOGGER = logging.getLogger(__name__)

BenchMethod = Literal[
    "gmq",
    "conquer-gaussian",
    "conquer-logistic",
    "expectile",  # Fixed-step gradient descent baseline.
    "smooth-expectile",
    "kth-power",
    "kth-power-smooth",
]
BENCH_METHODS: tuple[BenchMethod, ...] = (
    "gmq",
    "conquer-gaussian",
    "conquer-logistic",
    "expectile",
    "smooth-expectile",
    "kth-power",
    "kth-power-smooth",
)
DERIVATIVE_METHODS: tuple[BenchMethod, ...] = ("gmq", "conquer-gaussian", "conquer-logistic")

_METHOD_FAMILIES = {
    "gmq": "gmq",
    "conquer-gaussian": "conquer_gaussian",
    "conquer-logistic": "conquer_logistic",
    "expectile": "expectile",
    "smooth-expectile": "smooth_expectile",
    "kth-power": "kth_power",
    "kth-power-smooth": "smooth_kth_power",
}
MIN_DERIVATIVE_SIZE = 1000


@dataclasses.dataclass
class BenchRecord:
    """One fit of one method on one simulated dataset."""

    method: str
    model: str
    error_dist: str
    n: int
    p: int
    tau: float
    shape: float
    error_l2: float
    wall_time: float
    iterations: int
    converged: bool
    seed: int
    rep: int

    def to_dict(self) -> dict[str, Any]:
        """Convert to a dictionary."""
        return dataclasses.asdict(self)


def records_to_frame(records: Sequence[BenchRecord]) -> pd.DataFrame:
    """Collect records into a table, one column per field."""
    columns = [field.name for field in dataclasses.fields(BenchRecord)]
    return pd.DataFrame([record.to_dict() for record in records], columns=columns)


def method_loss_spec(
    method: BenchMethod,
    tau: float,
    n: int,
    p: int,
    shape: float | None = None,
    k: float = 1.5,
) -> LossSpec:
    """Build the loss of a bench method.

    The shape defaults to default_c(n, p) for the MQ families and to
    conquer_bandwidth(n, p) for the conquer families.
    """
    if method not in _METHOD_FAMILIES:
        raise ParameterError(f"Unsupported bench method: {method}.")
    family = _METHOD_FAMILIES[method]
    if method in ("expectile", "kth-power"):
        shape = 0.0
    elif shape is None:
        shape = conquer_bandwidth(n, p) if method.startswith("conquer") else default_c(n, p)
    return LossSpec(family=family, tau=tau, shape=shape, k=k)


def time_median(fn: Callable[[], Any], reps: int) -> float:
    """Median wall time of fn over reps calls, after one discarded warm-up call."""
    if reps < 1:
        raise ParameterError(f"reps must be at least 1, got {reps}.")
    fn()
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def bench_derivatives(
    sizes: Sequence[int],
    reps: int,
    tau: float = 0.5,
    shape: float = 0.1,
    seed: int = 0,
) -> pd.DataFrame:
    """Time vectorized first derivatives of GMQ and both conquer kernels.

    All methods see the same pseudo-random residual vector at each size.

    Returns:
        A table with columns size, method and median_seconds.
    """
    validate_tau(tau)
    rows = []
    for size in sizes:
        if size < MIN_DERIVATIVE_SIZE:
            raise ParameterError(f"Sizes must be at least {MIN_DERIVATIVE_SIZE}, got {size}.")
        residuals = make_rng(seed).standard_normal(size)
        derivatives: dict[str, Callable[[], Any]] = {
            "gmq": lambda: gmq_grad(residuals, tau, shape),
            "conquer-gaussian": lambda: conquer_grad(residuals, tau, shape, "gaussian"),
            "conquer-logistic": lambda: conquer_grad(residuals, tau, shape, "logistic"),
        }
        for method in DERIVATIVE_METHODS:
            seconds = time_median(derivatives[method], reps)
            rows.append({"size": size, "method": method, "median_seconds": seconds})
            LOGGER.debug("Size %d, %s: %.3e s.", size, method, seconds)
    return pd.DataFrame(rows, columns=["size", "method", "median_seconds"])


def hessian_profile(
    c: float, h: float, tau: float = 0.5, u_max: float = 3.0, points: int = 601
) -> pd.DataFrame:
    """Tabulate the second derivatives of GMQ and both conquer kernels on [-u_max, u_max]."""
    if points < 2 or not u_max > 0.0:
        raise ParameterError("hessian_profile needs points >= 2 and u_max > 0.")
    u = np.linspace(-u_max, u_max, points)
    profiles = {
        "gmq": gmq_hess(u, tau, c),
        "conquer-gaussian": conquer_hess(u, tau, h, "gaussian"),
        "conquer-logistic": conquer_hess(u, tau, h, "logistic"),
    }
    frames = [
        pd.DataFrame({"u": u, "method": method, "value": value})
        for method, value in profiles.items()
    ]
    return pd.concat(frames, ignore_index=True)


@dataclasses.dataclass
class BenchGrid:
    """Experiment grid of bench_regression."""

    models: tuple[ModelKind, ...] = ("homoskedastic",)
    n_list: tuple[int, ...] = (1000, 2000)
    # None means p = n // 20.
    p: int | None = None
    tau: float = 0.5
    dists: tuple[ErrorDist, ...] = ("normal",)
    methods: tuple[BenchMethod, ...] = ("gmq", "conquer-gaussian")
    reps: int = 3
    seed: int = 0
    # None means the default shape of every method.
    shape: float | None = None
    k: float = 1.5
    tol_delta: float = 1e-6
    max_iter: int = 5000

    def __post_init__(self) -> None:
        """Validate the grid."""
        for model in self.models:
            if model not in MODELS:
                raise ParameterError(f"Unsupported model: {model}.")
        for dist in self.dists:
            if dist not in ERROR_DISTS:
                raise ParameterError(f"Unsupported error distribution: {dist}.")
        for method in self.methods:
            if method not in BENCH_METHODS:
                raise ParameterError(f"Unsupported bench method: {method}.")
        for n in self.n_list:
            if self.dimension(n) < 1 or n <= self.dimension(n):
                raise ParameterError(f"Need n > p >= 1, got n={n}, p={self.dimension(n)}.")
        if self.reps < 1:
            raise ParameterError(f"reps must be at least 1, got {self.reps}.")
        validate_tau(self.tau)
        validate_power(self.k)

    def dimension(self, n: int) -> int:
        """Number of covariates at sample size n."""
        return max(1, n // 20) if self.p is None else self.p


def _bench_cell(grid: BenchGrid, cell: tuple[int, int, int, int]) -> list[BenchRecord]:
    model_index, n, dist_index, rep = cell
    model, dist = MODELS[model_index], ERROR_DISTS[dist_index]
    p = grid.dimension(n)
    spec = SimSpec(model=model, n=n, p=p, tau=grid.tau, error_dist=dist, seed=grid.seed)
    rng = replication_rng(grid.seed, rep, model_index, n, dist_index)
    dataset, truth = generate(spec, rng)
    config = OptimizerConfig(tol_delta=grid.tol_delta, max_iter=grid.max_iter)

    records = []
    for method in grid.methods:
        loss_spec = method_loss_spec(method, grid.tau, n, p, grid.shape, grid.k)
        start = time.perf_counter()
        result = fit(dataset, loss_spec, config, method="gd" if method == "expectile" else "bb")
        wall_time = time.perf_counter() - start
        records.append(
            BenchRecord(
                method=method,
                model=model,
                error_dist=dist,
                n=n,
                p=p,
                tau=grid.tau,
                shape=loss_spec.shape,
                error_l2=float(np.linalg.norm(result.beta_hat - truth)),
                wall_time=wall_time,
                iterations=result.trace.iterations,
                converged=result.trace.converged,
                seed=grid.seed,
                rep=rep,
            )
        )
    LOGGER.info("Bench cell model=%s n=%d dist=%s rep=%d done.", model, n, dist, rep)
    return records


def bench_regression(grid: BenchGrid) -> list[BenchRecord]:
    """Fit every method on every (model, n, dist, rep) cell of the grid.

    Methods of a cell share its dataset. Records are sorted by model, n,
    error_dist, method and rep.
    """
    cells = [
        (MODELS.index(model), n, ERROR_DISTS.index(dist), rep)
        for model in grid.models
        for n in grid.n_list
        for dist in grid.dists
        for rep in range(grid.reps)
    ]
    records = [
        record
        for cell_records in ordered_map(lambda cell: _bench_cell(grid, cell), cells)
        for record in cell_records
    ]
    records.sort(key=lambda r: (r.model, r.n, r.error_dist, r.method, r.rep))
    return records


def rmse_scan(
    template: SimSpec,
    n_grid: Sequence[int],
    reps: int,
    c: float | None = None,
    config: OptimizerConfig | None = None,
) -> pd.DataFrame:
    """Monte Carlo estimation error of GMQ fits as n grows, at fixed p.

    Args:
        template: Simulation parameters; n is replaced by each value of n_grid.
        n_grid: Sample sizes.
        reps: Replications per sample size.
        c: GMQ shape. None means default_c(n, p) at every n.
        config: Optimizer settings.

    Returns:
        One row per n with columns n, p, c, mean_error, rmse, sd_error and
        slope_fit, the log-log slope of rmse against n.
    """
    if reps < 1:
        raise ParameterError(f"reps must be at least 1, got {reps}.")
    n_values = sorted(int(n) for n in n_grid)
    rows = []
    for n_index, n in enumerate(n_values):
        spec = dataclasses.replace(template, n=n)
        shape = default_c(n, spec.p) if c is None else c
        loss_spec = LossSpec(family="gmq", tau=spec.tau, shape=shape)

        def replicate(rep: int, spec: SimSpec = spec, loss_spec: LossSpec = loss_spec) -> float:
            dataset, truth = generate(spec, replication_rng(spec.seed, rep, n_index))
            return float(np.linalg.norm(fit(dataset, loss_spec, config).beta_hat - truth))

        errors = np.asarray(ordered_map(replicate, range(reps)))
        rows.append(
            {
                "n": n,
                "p": spec.p,
                "c": shape,
                "mean_error": errors.mean(),
                "rmse": float(np.sqrt(np.mean(errors**2))),
                "sd_error": errors.std(ddof=1) if reps > 1 else 0.0,
            }
        )
        LOGGER.info("RMSE scan n=%d: mean error %.4f.", n, rows[-1]["mean_error"])

    table = pd.DataFrame(rows)
    table["slope_fit"] = (
        loglog_slope(table["n"], table["rmse"]) if len(table) >= 2 else float("nan")
    )
    return table
