"""Offer common helper functions for the CLI."""
import functools
import logging

import click
import voluptuous as vol
from voluptuous.humanize import humanize_error

from bwcousins.barneswall import build_bw, default_fourvolution, eigenlattice, twist
from bwcousins.brw_action import standard_involution
from bwcousins.const import (
    DEFAULT_BUDGET,
    EXIT_BUDGET,
    EXIT_FAILED,
    EXIT_USAGE,
)
from bwcousins.cousins import mc1
from bwcousins.exceptions import BudgetExceeded, BWCError, DocumentError, SizeError
from bwcousins.lattice_core import Lattice
from bwcousins.persistence import load_document, save_document
from bwcousins.validation import (
    is_budget,
    is_cousin_params,
    lattice_dimension,
    non_negative_int,
)

_LOGGER = logging.getLogger(__name__)

KINDS = ("bw", "mc1", "twist", "eigen")

LATTICE_SCHEMA = vol.Schema(
    {
        vol.Required("kind"): vol.In(KINDS),
        vol.Required("d"): lattice_dimension,
        vol.Optional("k"): vol.Any(None, int),
        vol.Optional("eps"): vol.Any(None, str),
        vol.Required("power", default=1): non_negative_int,
    },
    extra=vol.ALLOW_EXTRA,
)


def common_lattice_options(func):
    """Supply options selecting a lattice by construction or by file."""
    func = click.option(
        "--lattice",
        "lattice_file",
        type=click.Path(exists=True, dir_okay=False),
        help="Read the lattice from a lattice document instead.",
    )(func)
    func = click.option(
        "--power",
        default=1,
        show_default=True,
        type=int,
        help="Twist power for --kind twist.",
    )(func)
    func = click.option(
        "--eps",
        type=click.Choice(["+", "-"]),
        default="+",
        show_default=True,
        help="Eigenvalue sign of the involution.",
    )(func)
    func = click.option("--k", type=int, help="Defect of the involution.")(func)
    func = click.option("--d", type=int, help="Dimension of the Boolean space.")(func)
    func = click.option(
        "--kind",
        type=click.Choice(KINDS),
        default="bw",
        show_default=True,
        help="Lattice to construct.",
    )(func)
    return func


def common_output_options(func):
    """Supply output file options."""
    func = click.option(
        "--out",
        type=click.Path(dir_okay=False, writable=True),
        help="Write the document to this path.",
    )(func)
    return func


def common_budget_option(func):
    """Supply the enumeration budget option."""
    func = click.option(
        "--budget",
        default=str(DEFAULT_BUDGET),
        show_default=True,
        help="Enumeration node budget, e.g. 1e8.",
    )(func)
    return func


def validate(schema, data):
    """Return data validated by schema, exit with usage status otherwise."""
    try:
        return schema(data)
    except vol.Invalid as exc:
        click.echo(f"Invalid parameters: {humanize_error(data, exc)}", err=True)
        raise click.exceptions.Exit(EXIT_USAGE) from exc


def parse_budget(budget):
    """Return the budget as int."""
    return validate(is_budget, budget)


def cousin_params(d, k, eps):
    """Return validated (d, k, eps) of a first cousin."""
    params = validate(is_cousin_params, {"d": d, "k": k, "eps": eps})
    return params["d"], params["k"], params["eps"]


def handle_errors(func):
    """Turn library errors into messages and exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        """Run the command."""
        try:
            return func(*args, **kwargs)
        except BudgetExceeded as exc:
            click.echo(f"Budget exhausted: {exc}", err=True)
            raise click.exceptions.Exit(EXIT_BUDGET) from exc
        except (SizeError, DocumentError) as exc:
            click.echo(f"Error: {exc}", err=True)
            raise click.exceptions.Exit(EXIT_USAGE) from exc
        except BWCError as exc:
            click.echo(f"Error: {exc}", err=True)
            raise click.exceptions.Exit(EXIT_FAILED) from exc

    return wrapper


def resolve_lattice(kind, d, k, eps, power, lattice_file):
    """Return the lattice selected by the common lattice options."""
    if lattice_file is not None:
        lattice = load_document(lattice_file)
        if not isinstance(lattice, Lattice):
            raise DocumentError(f"{lattice_file} is not a lattice document")
        return lattice
    params = validate(
        LATTICE_SCHEMA, {"kind": kind, "d": d, "k": k, "eps": eps, "power": power}
    )
    d = params["d"]
    if kind == "bw":
        return build_bw(d).lattice
    if kind == "twist":
        return twist(build_bw(d).lattice, params["power"], default_fourvolution(d))
    d, k, eps = cousin_params(d, k, eps)
    if kind == "eigen":
        return eigenlattice(build_bw(d).lattice, standard_involution(d, k), eps)
    return mc1(d, k, eps).lattice


def describe(name, lattice):
    """Return a one line description of a lattice."""
    return f"{name}: rank {lattice.rank}, det {lattice.det}, {lattice.parity}"


def write_output(document, out):
    """Save document to out when a path is given."""
    if out is not None:
        save_document(out, document)

