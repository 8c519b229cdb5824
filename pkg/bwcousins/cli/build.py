"""Build lattices and write them as lattice documents."""
import click

from bwcousins.barneswall import build_bw, default_fourvolution, eigenlattice, twist
from bwcousins.brw_action import standard_involution
from bwcousins.cli.helper import (
    common_output_options,
    cousin_params,
    describe,
    handle_errors,
    validate,
    write_output,
)
from bwcousins.cousins import mc1
from bwcousins.validation import lattice_dimension, non_negative_int


def common_cousin_options(func):
    """Supply the (d, k, eps) options of a first cousin."""
    func = click.option(
        "--eps",
        type=click.Choice(["+", "-"]),
        default="+",
        show_default=True,
        help="Eigenvalue sign of the involution.",
    )(func)
    func = click.option(
        "--k", type=int, required=True, help="Defect of the involution."
    )(func)
    func = click.option(
        "--d", type=int, required=True, help="Dimension of the Boolean space."
    )(func)
    return func


@click.group(options_metavar="", subcommand_metavar="<lattice>")
def build():
    """Build a lattice."""


@build.command(options_metavar="<options>")
@click.option("--d", type=int, required=True, help="Dimension of the Boolean space.")
@common_output_options
@handle_errors
def bw(d, out):
    """Build the Barnes-Wall lattice BW_d."""
    d = validate(lattice_dimension, d)
    lattice = build_bw(d).lattice
    click.echo(describe(f"BW_{d}", lattice))
    write_output(lattice, out)


@build.command(name="mc1", options_metavar="<options>")
@common_cousin_options
@common_output_options
@handle_errors
def mc1_cousin(d, k, eps, out):
    """Build the first cousin MC_1(d, k, eps)."""
    d, k, eps = cousin_params(d, k, eps)
    lattice = mc1(d, k, eps).lattice
    click.echo(describe(f"MC_1({d},{k},{eps.symbol})", lattice))
    write_output(lattice, out)


@build.command(name="twist", options_metavar="<options>")
@click.option("--d", type=int, required=True, help="Dimension of the Boolean space.")
@click.option("--power", type=int, default=1, show_default=True, help="Twist power.")
@common_output_options
@handle_errors
def twist_lattice(d, power, out):
    """Build the twist BW_d(f - 1)^power for the standard fourvolution f."""
    d = validate(lattice_dimension, d)
    power = validate(non_negative_int, power)
    lattice = twist(build_bw(d).lattice, power, default_fourvolution(d))
    click.echo(describe(f"BW_{d}[{power}]", lattice))
    write_output(lattice, out)


@build.command(options_metavar="<options>")
@common_cousin_options
@common_output_options
@handle_errors
def eigen(d, k, eps, out):
    """Build the eigenlattice of the standard defect k involution on BW_d."""
    d, k, eps = cousin_params(d, k, eps)
    lattice = eigenlattice(build_bw(d).lattice, standard_involution(d, k), eps)
    click.echo(describe(f"BW_{d}^{eps.symbol}(t)", lattice))
    write_output(lattice, out)

