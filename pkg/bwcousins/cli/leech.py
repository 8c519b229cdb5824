"""Search the Leech lattice among the cousins of BW_5."""
import click

from bwcousins.cli.helper import (
    common_budget_option,
    common_output_options,
    handle_errors,
    parse_budget,
    validate,
    write_output,
)
from bwcousins.const import EXIT_FAILED, EXIT_OK
from bwcousins.cousins import leech_cousin
from bwcousins.validation import non_negative_int, positive_int


@click.command(name="leech", options_metavar="<options>")
@click.option("--seed", default=0, show_default=True, help="Random seed.")
@click.option(
    "--attempts",
    default=200,
    show_default=True,
    help="Reflection products tried before giving up.",
)
@click.option("--kissing", is_flag=True, help="Count the vectors of norm 4.")
@common_budget_option
@common_output_options
@handle_errors
def leech(seed, attempts, kissing, budget, out):
    """Search an even unimodular overlattice of rank 24 without roots."""
    result = leech_cousin(
        validate(non_negative_int, seed),
        validate(positive_int, attempts),
        parse_budget(budget),
        kissing,
    )
    document = result.as_dict()
    for key, value in document.items():
        if value is not None and key != "note":
            click.echo(f"{key}: {value}")
    if result.found and result.lattice is not None:
        document["lattice"] = result.lattice
    write_output(document, out)
    raise click.exceptions.Exit(EXIT_OK if result.found else EXIT_FAILED)
