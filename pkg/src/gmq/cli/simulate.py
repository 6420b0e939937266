"""Contains `gmq simulate` CLI implementation."""

from __future__ import annotations

import logging
from pathlib import Path

import click

from gmq.errors import DataError, ParameterError
from gmq.simulation import SimSpec, generate
from gmq.utils import io
from gmq.utils import logging as logging_utils

LOGGER = logging.getLogger(__name__)


def load_sim_spec(path: Path) -> SimSpec:
    """Load a SimSpec from a JSON file."""
    data = io.load_json(path)
    if not isinstance(data, dict):
        raise DataError(f"{path} must hold a JSON object.")
    try:
        return SimSpec.from_dict(data)
    except TypeError as error:
        raise ParameterError(f"Invalid simulation spec in {path}: {error}") from error


@click.command()
@click.argument("spec_path", type=click.Path(path_type=Path, exists=True, dir_okay=False))
@click.argument("output_path", type=click.Path(path_type=Path, dir_okay=False))
@click.option("-v", "--verbose", is_flag=True, help="Activate debug logs.")
def simulate_cli(spec_path: Path, output_path: Path, verbose: bool):
    """Draw the dataset described by a SimSpec JSON file.

    Writes OUTPUT_PATH (header x1,...,xp,y) and the sidecar OUTPUT_PATH with
    suffix .truth.json holding the true coefficients and the spec.
    """
    logging_utils.configure(logging_utils.cli_level(verbose))

    spec = load_sim_spec(spec_path)
    dataset, truth = generate(spec)

    LOGGER.info("Saving %d samples to %s.", dataset.n, output_path)
    io.save_dataset(dataset, output_path)
    io.save_json(
        {"beta_star": truth, "has_intercept": spec.has_intercept, "spec": spec.to_dict()},
        io.truth_path(output_path),
    )
