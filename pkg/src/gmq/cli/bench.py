"""Contains the `gmq bench-*` CLI implementations."""

from __future__ import annotations

import logging
from pathlib import Path

import click
import pandas as pd

from gmq.benchmarks import (
    BENCH_METHODS,
    BenchGrid,
    bench_derivatives,
    bench_regression,
    hessian_profile,
    records_to_frame,
)
from gmq.simulation import ERROR_DISTS, MODELS
from gmq.utils import io
from gmq.utils import logging as logging_utils

from .types import POSITIVE, TAU, CommaSeparated

LOGGER = logging.getLogger(__name__)

OUTPUT_OPTION = click.option(
    "-o",
    "--out",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="CSV file to write. Defaults to stdout.",
)
VERBOSE_OPTION = click.option("-v", "--verbose", is_flag=True, help="Activate debug logs.")


def emit_table(frame: pd.DataFrame, out: Path | None) -> None:
    """Write a table to out, or to stdout when out is None."""
    if out is None:
        click.echo(io.format_table(frame), nl=False)
    else:
        LOGGER.info("Saving %d rows to %s.", len(frame), out)
        io.write_table(frame, out)


@click.command()
@click.option(
    "--sizes",
    type=CommaSeparated(click.IntRange(min=1000)),
    default="1000000,10000000",
    show_default=True,
    help="Comma separated residual vector sizes.",
)
@click.option("--reps", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--tau", type=TAU, default=0.5, show_default=True)
@click.option(
    "--shape",
    type=POSITIVE,
    default=0.1,
    show_default=True,
    help="Shape c of GMQ and bandwidth h of conquer.",
)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@OUTPUT_OPTION
@VERBOSE_OPTION
def bench_deriv_cli(
    sizes: tuple[int, ...],
    reps: int,
    tau: float,
    shape: float,
    seed: int,
    out: Path | None,
    verbose: bool,
):
    """Time first derivatives of GMQ and the conquer kernels (size,method,median_seconds)."""
    logging_utils.configure(logging_utils.cli_level(verbose))
    emit_table(bench_derivatives(sizes, reps, tau=tau, shape=shape, seed=seed), out)


@click.command()
@click.option(
    "--models",
    type=CommaSeparated(click.Choice(MODELS)),
    default="homoskedastic",
    show_default=True,
)
@click.option(
    "--n-list",
    type=CommaSeparated(click.IntRange(min=2)),
    default="1000,2000",
    show_default=True,
)
@click.option("--p", type=click.IntRange(min=1), default=None, help="Covariates. Default n/20.")
@click.option("--tau", type=TAU, default=0.5, show_default=True)
@click.option(
    "--dists",
    type=CommaSeparated(click.Choice(ERROR_DISTS)),
    default="normal",
    show_default=True,
)
@click.option(
    "--methods",
    type=CommaSeparated(click.Choice(BENCH_METHODS)),
    default="gmq,conquer-gaussian",
    show_default=True,
)
@click.option("--reps", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option(
    "--shape",
    type=POSITIVE,
    default=None,
    help="Shape of all smoothed methods. Default per method.",
)
@click.option("--k", type=click.FloatRange(1.0, 2.0, min_open=True), default=1.5, show_default=True)
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.option("--max-iter", type=int, default=5000, show_default=True)
@OUTPUT_OPTION
@VERBOSE_OPTION
def bench_regression_cli(
    models: tuple[str, ...],
    n_list: tuple[int, ...],
    p: int | None,
    tau: float,
    dists: tuple[str, ...],
    methods: tuple[str, ...],
    reps: int,
    seed: int,
    shape: float | None,
    k: float,
    tol: float,
    max_iter: int,
    out: Path | None,
    verbose: bool,
):
    """Estimation error and time of every method on simulated data, one row per fit."""
    logging_utils.configure(logging_utils.cli_level(verbose))
    grid = BenchGrid(
        models=models,
        n_list=n_list,
        p=p,
        tau=tau,
        dists=dists,
        methods=methods,
        reps=reps,
        seed=seed,
        shape=shape,
        k=k,
        tol_delta=tol,
        max_iter=max_iter,
    )
    emit_table(records_to_frame(bench_regression(grid)), out)


@click.command()
@click.option("--c", "c", type=POSITIVE, default=0.5, show_default=True, help="GMQ shape.")
@click.option("--h", "h", type=POSITIVE, default=0.5, show_default=True, help="Conquer bandwidth.")
@click.option("--tau", type=TAU, default=0.5, show_default=True)
@click.option("--u-max", type=POSITIVE, default=3.0, show_default=True)
@click.option("--points", type=click.IntRange(min=2), default=601, show_default=True)
@OUTPUT_OPTION
@VERBOSE_OPTION
def bench_hessian_cli(
    c: float, h: float, tau: float, u_max: float, points: int, out: Path | None, verbose: bool
):
    """Second derivatives of GMQ and the conquer kernels on a residual grid (u,method,value)."""
    logging_utils.configure(logging_utils.cli_level(verbose))
    emit_table(hessian_profile(c, h, tau=tau, u_max=u_max, points=points), out)
