"""Contains `gmq bias-scan` and `gmq rmse-scan` CLI implementations."""

from __future__ import annotations

import logging
from pathlib import Path

import click

from gmq.benchmarks import rmse_scan
from gmq.optimize import OptimizerConfig
from gmq.oracle import bias_estimate
from gmq.simulation import ERROR_DISTS, MODELS, SimSpec
from gmq.utils import logging as logging_utils

from .bench import OUTPUT_OPTION, VERBOSE_OPTION, emit_table
from .types import POSITIVE, TAU, AutoFloat, CommaSeparated

LOGGER = logging.getLogger(__name__)


@click.command()
@click.option(
    "--c-grid",
    type=CommaSeparated(POSITIVE),
    default="0.02,0.1,0.5",
    show_default=True,
)
@click.option("--n", type=click.IntRange(min=2), default=100000, show_default=True)
@click.option("--p", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--reps", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--tau", type=TAU, default=0.7, show_default=True)
@click.option("--dist", type=click.Choice(ERROR_DISTS), default="normal", show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option(
    "--intercept/--no-intercept",
    default=True,
    show_default=True,
    help="Whether to fit an intercept, which carries the smoothing bias.",
)
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--max-iter", type=int, default=20000, show_default=True)
@OUTPUT_OPTION
@VERBOSE_OPTION
def bias_scan_cli(
    c_grid: tuple[float, ...],
    n: int,
    p: int,
    reps: int,
    tau: float,
    dist: str,
    seed: int,
    intercept: bool,
    tol: float,
    max_iter: int,
    out: Path | None,
    verbose: bool,
):
    """Monte Carlo smoothing bias of GMQ fits against c, with the fitted rate slope."""
    logging_utils.configure(logging_utils.cli_level(verbose))
    template = SimSpec(model="homoskedastic", n=n, p=p, tau=tau, error_dist=dist, seed=seed)
    LOGGER.info("Scanning %d shapes with %d replications of n=%d.", len(c_grid), reps, n)
    table = bias_estimate(
        template,
        c_grid,
        n,
        reps,
        fit_intercept=intercept,
        config=OptimizerConfig(tol_delta=tol, max_iter=max_iter),
    )
    emit_table(table, out)


@click.command()
@click.option(
    "--n-grid",
    type=CommaSeparated(click.IntRange(min=2)),
    default="1000,4000,16000",
    show_default=True,
)
@click.option("--p", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--c", "c", type=AutoFloat(), default="auto", show_default=True)
@click.option("--reps", type=click.IntRange(min=1), default=50, show_default=True)
@click.option("--tau", type=TAU, default=0.7, show_default=True)
@click.option("--model", type=click.Choice(MODELS), default="homoskedastic", show_default=True)
@click.option("--dist", type=click.Choice(ERROR_DISTS), default="normal", show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.option("--max-iter", type=int, default=5000, show_default=True)
@OUTPUT_OPTION
@VERBOSE_OPTION
def rmse_scan_cli(
    n_grid: tuple[int, ...],
    p: int,
    c: float | None,
    reps: int,
    tau: float,
    model: str,
    dist: str,
    seed: int,
    tol: float,
    max_iter: int,
    out: Path | None,
    verbose: bool,
):
    """Monte Carlo estimation error of GMQ fits against n, with the fitted log-log slope."""
    logging_utils.configure(logging_utils.cli_level(verbose))
    if c == 0.0:
        raise click.UsageError("--c must be positive or auto.")
    template = SimSpec(model=model, n=max(n_grid), p=p, tau=tau, error_dist=dist, seed=seed)
    LOGGER.info("Scanning %d sample sizes with %d replications.", len(n_grid), reps)
    table = rmse_scan(
        template, n_grid, reps, c=c, config=OptimizerConfig(tol_delta=tol, max_iter=max_iter)
    )
    emit_table(table, out)
