"""Expose validators to use in the library."""
from fractions import Fraction
import logging
import os

import voluptuous as vol

from .const import MAX_D, MIN_D, MIN_LATTICE_D, THREADS_ENV, Eps
from .exceptions import SizeError

_LOGGER = logging.getLogger(__name__)

code_dimension = vol.All(vol.Coerce(int), vol.Range(min=MIN_D, max=MAX_D))
lattice_dimension = vol.All(vol.Coerce(int), vol.Range(min=MIN_LATTICE_D, max=MAX_D))
positive_int = vol.All(vol.Coerce(int), vol.Range(min=1))
non_negative_int = vol.All(vol.Coerce(int), vol.Range(min=0))
norm_bound = vol.All(vol.Coerce(Fraction), vol.Range(min=0))


def is_eps(value):
    """Validate that value is an eigenvalue sign."""
    try:
        return Eps.from_symbol(value)
    except (TypeError, ValueError) as exc:
        raise vol.Invalid(f"{value} is not a valid eigenvalue sign") from exc


def is_budget(value):
    """Validate a node budget given as int, float or a string like '1e8'."""
    try:
        if isinstance(value, str):
            value = float(value) if any(c in value for c in ".eE") else int(value)
        if isinstance(value, float):
            if value != int(value):
                raise ValueError()
            value = int(value)
        value = int(value)
    except (TypeError, ValueError, OverflowError) as exc:
        raise vol.Invalid(f"{value} is not a valid budget") from exc
    if value < 1:
        raise vol.Invalid(f"budget must be positive, got {value}")
    return value


def is_cousin_params(value):
    """Validate the (d, k, eps) triple of a first cousin."""
    value = COUSIN_SCHEMA(value)
    d_value, k_value = value["d"], value["k"]
    if not 1 <= k_value <= d_value // 2:
        raise vol.Invalid(f"k must lie in [1, {d_value // 2}] for d={d_value}")
    if d_value - 2 * k_value < 1:
        raise vol.Invalid(
            f"d - 2k must be at least 1 for a core translation, got d={d_value}, "
            f"k={k_value}"
        )
    return value


COUSIN_SCHEMA = vol.Schema(
    {
        vol.Required("d"): lattice_dimension,
        vol.Required("k"): positive_int,
        vol.Required("eps", default=Eps.PLUS): is_eps,
    }
)


def check(validator, value, error=SizeError):
    """Run validator and raise error instead of vol.Invalid."""
    try:
        return validator(value)
    except vol.Invalid as exc:
        raise error(str(exc)) from exc


def safe_threads(value=None):
    """Return a valid worker thread count, read from the environment by default."""
    if value is None:
        value = os.environ.get(THREADS_ENV)
        if value is None:
            return 1
    try:
        return positive_int(value)
    except vol.Invalid:
        _LOGGER.warning(
            "%s is not a valid thread count, falling back to 1 thread", value
        )
        return 1
