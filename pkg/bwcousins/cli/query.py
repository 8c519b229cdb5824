"""Inspect lattices: short vectors, theta series, components and Jordan numbers."""
import click
import voluptuous as vol

from bwcousins.barneswall import build_bw
from bwcousins.brw_action import (
    isometry_as_dict,
    jordan_number,
    jordan_witness_search,
    standard_involution,
)
from bwcousins.cli.helper import (
    common_budget_option,
    common_lattice_options,
    common_output_options,
    handle_errors,
    parse_budget,
    resolve_lattice,
    validate,
    write_output,
)
from bwcousins.const import EXIT_FAILED
from bwcousins.lattice_core import decompose, enumerate_short, export_gram, theta
from bwcousins.validation import lattice_dimension, norm_bound, positive_int

JNO_SCHEMA = vol.Schema(
    {
        vol.Required("d"): lattice_dimension,
        vol.Optional("k"): vol.Any(None, positive_int),
    }
)


def bound_option(func):
    """Supply the norm bound option."""
    func = click.option(
        "--bound", required=True, help="Largest norm to include, e.g. 4 or 9/2."
    )(func)
    return func


@click.command(name="enumerate", options_metavar="<options>")
@common_lattice_options
@bound_option
@common_budget_option
@common_output_options
@handle_errors
def enumerate_vectors(
    kind, d, k, eps, power, lattice_file, bound, budget, out
):  # pylint: disable=too-many-arguments
    """List the lattice vectors of norm at most bound."""
    lattice = resolve_lattice(kind, d, k, eps, power, lattice_file)
    bound = validate(norm_bound, bound)
    result = enumerate_short(lattice, bound, parse_budget(budget))
    click.echo(f"{result.count} vectors of norm <= {bound} ({result.nodes} nodes)")
    write_output(
        {
            "bound": bound,
            "count": result.count,
            "nodes": result.nodes,
            "norms": list(result.norms),
            "vectors": [
                [str(value) for value in vector.coords] for vector in result.vectors
            ],
        },
        out,
    )


@click.command(name="theta", options_metavar="<options>")
@common_lattice_options
@bound_option
@common_budget_option
@common_output_options
@handle_errors
def theta_series(
    kind, d, k, eps, power, lattice_file, bound, budget, out
):  # pylint: disable=too-many-arguments
    """Print the theta series up to bound."""
    lattice = resolve_lattice(kind, d, k, eps, power, lattice_file)
    series = theta(lattice, validate(norm_bound, bound), parse_budget(budget))
    for norm, count in series.as_dict().items():
        click.echo(f"{norm}: {count}")
    write_output(series, out)


@click.command(name="decompose", options_metavar="<options>")
@common_lattice_options
@common_budget_option
@common_output_options
@handle_errors
def decompose_lattice(
    kind, d, k, eps, power, lattice_file, budget, out
):  # pylint: disable=too-many-arguments
    """Split the lattice into orthogonal indecomposable components."""
    lattice = resolve_lattice(kind, d, k, eps, power, lattice_file)
    result = decompose(lattice, parse_budget(budget))
    click.echo(f"components: {list(result.ranks)}, index {result.index}")
    write_output(
        {
            "ranks": list(result.ranks),
            "index": result.index,
            "bound": result.bound,
            "components": list(result.components),
        },
        out,
    )


@click.command(name="jno", options_metavar="<options>")
@click.option("--d", type=int, required=True, help="Dimension of the Boolean space.")
@click.option("--k", type=int, help="Defect of the standard involution.")
@click.option(
    "--upper",
    is_flag=True,
    help="Search an involution outside R_d with Jordan number 2^(d-1), d <= 4.",
)
@common_output_options
@handle_errors
def jno(d, k, upper, out):
    """Print the Jordan number of an involution on BW_d."""
    params = validate(JNO_SCHEMA, {"d": d, "k": k})
    d, k = params["d"], params.get("k")
    lattice = build_bw(d).lattice
    if upper:
        witness = jordan_witness_search(lattice)
        if witness is None:
            click.echo("No involution found")
            raise click.exceptions.Exit(EXIT_FAILED)
        value = jordan_number(lattice, witness)
        document = {"d": d, "involution": isometry_as_dict(witness), "jno": value}
    else:
        if k is None:
            raise click.UsageError("--k is required unless --upper is given")
        involution = standard_involution(d, k)
        value = jordan_number(lattice, involution.isometry)
        document = {"d": d, "k": k, "jno": value}
    click.echo(value)
    write_output(document, out)


@click.command(name="export", options_metavar="<options>")
@common_lattice_options
@common_output_options
@handle_errors
def export(
    kind, d, k, eps, power, lattice_file, out
):  # pylint: disable=too-many-arguments
    """Export the Gram matrix scaled to integers."""
    lattice = resolve_lattice(kind, d, k, eps, power, lattice_file)
    document = export_gram(lattice)
    click.echo(
        f"Gram matrix of rank {lattice.rank}, scale 2^{document['scale_exponent']}"
    )
    write_output(document, out)
