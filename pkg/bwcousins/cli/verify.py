"""Run verification suites and write their reports."""
import click

from bwcousins.barneswall import verify_bw
from bwcousins.cli.build import common_cousin_options
from bwcousins.cli.helper import (
    common_budget_option,
    common_output_options,
    cousin_params,
    handle_errors,
    parse_budget,
    validate,
    write_output,
)
from bwcousins.cousins import verify_cousin
from bwcousins.validation import lattice_dimension


def common_thread_option(func):
    """Supply the worker thread option."""
    func = click.option(
        "--threads",
        type=int,
        help="Worker threads, defaults to BWC_THREADS or 1.",
    )(func)
    return func


def finish(report, out):
    """Print the report, write it and exit with its status."""
    for line in report.summary_lines():
        click.echo(line)
    write_output(report, out)
    raise click.exceptions.Exit(report.exit_code)


@click.group(options_metavar="", subcommand_metavar="<lattice>")
def verify():
    """Verify the claims about a lattice."""


@verify.command(name="mc1", options_metavar="<options>")
@common_cousin_options
@common_budget_option
@common_thread_option
@common_output_options
@handle_errors
def verify_mc1(
    d, k, eps, budget, threads, out
):  # pylint: disable=too-many-arguments
    """Verify the first cousin MC_1(d, k, eps)."""
    d, k, eps = cousin_params(d, k, eps)
    report = verify_cousin(d, k, eps, parse_budget(budget), threads)
    finish(report, out)


@verify.command(name="bw", options_metavar="<options>")
@click.option("--d", type=int, required=True, help="Dimension of the Boolean space.")
@common_budget_option
@common_thread_option
@common_output_options
@handle_errors
def verify_barnes_wall(d, budget, threads, out):
    """Verify the Barnes-Wall lattice BW_d."""
    d = validate(lattice_dimension, d)
    report = verify_bw(d, parse_budget(budget), threads)
    finish(report, out)
