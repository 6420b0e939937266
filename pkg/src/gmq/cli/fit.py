"""Contains `gmq fit` CLI implementation."""

from __future__ import annotations

import logging
from pathlib import Path

import click

from gmq.benchmarks import BENCH_METHODS, method_loss_spec
from gmq.losses.params import SHAPED_FAMILIES
from gmq.models import fit
from gmq.optimize import OptimizerConfig
from gmq.utils import io
from gmq.utils import logging as logging_utils

from .types import TAU, AutoFloat

LOGGER = logging.getLogger(__name__)

_CONQUER_LOSSES = ("conquer-gaussian", "conquer-logistic")
_MQ_LOSSES = ("gmq", "smooth-expectile", "kth-power-smooth")
_KTH_POWER_LOSSES = ("kth-power", "kth-power-smooth")


@click.command()
@click.argument("data_path", type=click.Path(path_type=Path, exists=True, dir_okay=False))
@click.option("--tau", type=TAU, default=0.5, show_default=True, help="Quantile level.")
@click.option(
    "--loss",
    type=click.Choice(BENCH_METHODS),
    default="gmq",
    show_default=True,
    help="Loss family.",
)
@click.option("--c", "c", type=AutoFloat(), default=None, help="MQ shape c, or auto.")
@click.option("--h", "h", type=AutoFloat(), default=None, help="Conquer bandwidth h, or auto.")
@click.option("--k", "k", type=float, default=None, help="Power of the kth power losses.")
@click.option("--tol", type=float, default=1e-6, show_default=True, help="Gradient tolerance.")
@click.option("--max-iter", type=int, default=5000, show_default=True)
@click.option(
    "--intercept/--no-intercept",
    default=False,
    show_default=True,
    help="Whether to prepend an intercept column.",
)
@click.option(
    "--json-out",
    type=click.Path(path_type=Path, dir_okay=False),
    default=None,
    help="Also write the result JSON to this path.",
)
@click.option("-v", "--verbose", is_flag=True, help="Activate debug logs.")
def fit_cli(
    data_path: Path,
    tau: float,
    loss: str,
    c: float | None,
    h: float | None,
    k: float | None,
    tol: float,
    max_iter: int,
    intercept: bool,
    json_out: Path | None,
    verbose: bool,
):
    """Fit linear quantile-type regression to DATA_PATH and print the result JSON.

    Shapes left at auto use ((p + ln n) / n)^(1/3) for c and
    ((p + ln n) / n)^(2/5) for h.
    """
    logging_utils.configure(logging_utils.cli_level(verbose))

    if c is not None and loss not in _MQ_LOSSES:
        raise click.UsageError(f"--c does not apply to --loss {loss}.")
    if h is not None and loss not in _CONQUER_LOSSES:
        raise click.UsageError(f"--h does not apply to --loss {loss}.")
    if k is not None and loss not in _KTH_POWER_LOSSES:
        raise click.UsageError(f"--k does not apply to --loss {loss}.")
    shape = h if loss in _CONQUER_LOSSES else c
    if shape == 0.0:
        raise click.UsageError(f"--loss {loss} needs a positive shape to be smooth.")

    dataset = io.load_dataset(data_path, has_intercept=intercept)
    LOGGER.info("Loaded %d samples with %d covariates.", dataset.n, dataset.p)

    loss_spec = method_loss_spec(
        loss, tau, dataset.n, dataset.p, shape, 1.5 if k is None else k
    )
    if loss_spec.family in SHAPED_FAMILIES:
        LOGGER.info("Using shape %.4g.", loss_spec.shape)
    config = OptimizerConfig(tol_delta=tol, max_iter=max_iter)
    result = fit(dataset, loss_spec, config, method="gd" if loss == "expectile" else "bb")
    if not result.trace.converged:
        LOGGER.warning(
            "No convergence after %d iterations (%s).",
            result.trace.iterations,
            result.trace.stop_reason,
        )

    payload = result.to_dict()
    if json_out is not None:
        io.save_json(payload, json_out)
    click.echo(io.dump_json(payload))
