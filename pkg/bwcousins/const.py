"""Constants and enums for bwcousins."""
from enum import Enum, IntEnum

# Reed-Muller codes are supported for 1 <= d <= MAX_D, lattices for MIN_LATTICE_D <= d.
MIN_D = 1
MAX_D = 9
MIN_LATTICE_D = 2

DEFAULT_BUDGET = 10**9
LLL_DELTA = (3, 4)

# Exact isometry search is only attempted up to this rank.
ISOMETRY_MAX_RANK = 12
# verify_cousin only tries a full short vector enumeration up to this rank.
ENUMERATION_MAX_RANK = 48
# Exhaustive minimal vector and decomposition checks run up to this rank.
FULL_CENSUS_MAX_RANK = 24

# Materialization guards.
MAX_MINVEC_D = 5
MAX_TWIST_MINVEC_D = 4
MAX_EXHAUSTIVE_CODE_DIM = 20

THREADS_ENV = "BWC_THREADS"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class BaseConst(IntEnum):
    """Base class for integer enums with a symbol."""

    @property
    def symbol(self):
        """Return the short symbol of the member."""
        return self.name.lower()


class Eps(BaseConst):
    """Eigenvalue sign of an involution."""

    PLUS = 1
    MINUS = -1

    @property
    def symbol(self):
        """Return '+' or '-'."""
        return "+" if self is Eps.PLUS else "-"

    @classmethod
    def from_symbol(cls, value):
        """Return the member for '+', '-', 1, -1, 'plus' or 'minus'."""
        if isinstance(value, Eps):
            return value
        lookup = {"+": cls.PLUS, "-": cls.MINUS, "plus": cls.PLUS, "minus": cls.MINUS}
        if isinstance(value, str):
            if value.strip().lower() in lookup:
                return lookup[value.strip().lower()]
            raise ValueError(f"{value} is not a valid eigenvalue sign")
        return cls(int(value))


class ClaimStatus(Enum):
    """Outcome of a single verification claim."""

    PASS = "pass"
    FAIL = "fail"
    BOUNDED = "bounded"
    SKIPPED_BUDGET = "skipped-budget"


class WordClass(Enum):
    """Classification of a second order Reed-Muller word."""

    SHORT = "short"
    LONG = "long"
    MID = "mid"


class IsometryStatus(Enum):
    """Outcome of an isometry test."""

    ISOMETRIC = "isometric"
    NOT_ISOMETRIC = "not-isometric"
    EVIDENCE_ONLY = "evidence-only"
