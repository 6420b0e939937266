"""Command-line-interface of gmq."""

import click

from gmq.errors import GMQError

from . import bench, fit, scan, simulate

# Code printed for file system errors, which do not come from gmq.
IO_ERROR_CODE = "GMQ-IO"


class GMQGroup(click.Group):
    """Command group that reports gmq and file system errors with their code."""

    def invoke(self, ctx: click.Context):
        """Invoke the subcommand, turning known errors into exit status 1."""
        try:
            return super().invoke(ctx)
        except GMQError as error:
            click.echo(f"{error.code}: {error}", err=True)
            ctx.exit(1)
        except OSError as error:
            click.echo(f"{IO_ERROR_CODE}: {error}", err=True)
            ctx.exit(1)


@click.group(cls=GMQGroup)
def main_cli():
    """Fit, simulate and benchmark GMQ smoothed quantile regression."""
    pass


main_cli.add_command(simulate.simulate_cli, "simulate")
main_cli.add_command(fit.fit_cli, "fit")
main_cli.add_command(bench.bench_deriv_cli, "bench-deriv")
main_cli.add_command(bench.bench_regression_cli, "bench-regression")
main_cli.add_command(bench.bench_hessian_cli, "bench-hessian")
main_cli.add_command(scan.bias_scan_cli, "bias-scan")
main_cli.add_command(scan.rmse_scan_cli, "rmse-scan")
