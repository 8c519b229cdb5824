"""Implement a command line interface for bwcousins."""
import logging

import click

from bwcousins import __version__
from bwcousins.cli.build import build
from bwcousins.cli.leech import leech
from bwcousins.cli.query import (
    decompose_lattice,
    enumerate_vectors,
    export,
    jno,
    theta_series,
)
from bwcousins.cli.verify import verify

SETTINGS = dict(help_option_names=["-h", "--help"])


@click.group(
    options_metavar="", subcommand_metavar="<command>", context_settings=SETTINGS
)
@click.option("--debug", is_flag=True, help="Log debug messages.")
@click.version_option(__version__)
def cli(debug):
    """Build and verify Barnes-Wall lattices and their midwest cousins."""
    if debug:
        logging.basicConfig(level=logging.DEBUG)
    else:
        logging.basicConfig(level=logging.INFO)


cli.add_command(build)
cli.add_command(verify)
cli.add_command(enumerate_vectors)
cli.add_command(theta_series)
cli.add_command(decompose_lattice)
cli.add_command(jno)
cli.add_command(export)
cli.add_command(leech)
