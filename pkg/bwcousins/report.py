"""Verification claims and reports."""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import logging

import voluptuous as vol

from .const import EXIT_BUDGET, EXIT_FAILED, EXIT_OK, ClaimStatus
from .exact_linalg import Dyadic

_LOGGER = logging.getLogger(__name__)


def jsonable(value):
    """Return value with rationals, enums and tuples turned into JSON types."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, Dyadic):
        return str(value)
    if isinstance(value, dict):
        return {str(key): jsonable(val) for key, val in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(val) for val in value]
    return value


@dataclass(frozen=True)
class Claim:
    """Single checked statement with its expected and computed values."""

    name: str
    source: str
    expected: object
    computed: object
    status: ClaimStatus

    @classmethod
    def compare(cls, name, source, expected, computed):
        """Return a claim that passes when expected == computed."""
        status = ClaimStatus.PASS if expected == computed else ClaimStatus.FAIL
        return cls(name, source, expected, computed, status)

    def as_dict(self):
        """Return the claim document."""
        return {
            "name": self.name,
            "source": self.source,
            "expected": jsonable(self.expected),
            "computed": jsonable(self.computed),
            "status": self.status.value,
        }


CLAIM_SCHEMA = vol.Schema(
    {
        vol.Required("name"): str,
        vol.Required("source"): str,
        vol.Required("expected"): object,
        vol.Required("computed"): object,
        vol.Required("status"): vol.All(str, vol.Coerce(ClaimStatus)),
    }
)

REPORT_SCHEMA = vol.Schema(
    {
        vol.Required("params"): dict,
        vol.Optional("summary", default={}): dict,
        vol.Required("claims"): [CLAIM_SCHEMA],
    }
)


@dataclass
class VerificationReport:
    """Claims checked for one lattice, in a fixed order."""

    params: dict
    claims: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def __repr__(self):
        """Return the representation."""
        return f"<{self.__class__.__name__} {self.params} {len(self.claims)} claims>"

    def add(self, claim):
        """Append a claim."""
        self.claims.append(claim)

    def claim(self, name):
        """Return the first claim with the given name."""
        for item in self.claims:
            if item.name == name:
                return item
        raise KeyError(name)

    @property
    def failed(self):
        """Return the failed claims."""
        return [item for item in self.claims if item.status is ClaimStatus.FAIL]

    @property
    def degraded(self):
        """Return the bounded or skipped claims."""
        return [
            item
            for item in self.claims
            if item.status in (ClaimStatus.BOUNDED, ClaimStatus.SKIPPED_BUDGET)
        ]

    @property
    def passed(self):
        """Return True when no claim failed."""
        return not self.failed

    @property
    def exit_code(self):
        """Return 1 on a failed claim, 3 on a bounded claim, 0 otherwise."""
        if self.failed:
            return EXIT_FAILED
        if self.degraded:
            return EXIT_BUDGET
        return EXIT_OK

    def as_dict(self):
        """Return the report document."""
        return {
            "params": jsonable(self.params),
            "summary": jsonable(self.summary),
            "claims": [item.as_dict() for item in self.claims],
        }

    @classmethod
    def from_dict(cls, data):
        """Return a report from a validated document."""
        data = REPORT_SCHEMA(data)
        claims = [
            Claim(
                item["name"],
                item["source"],
                item["expected"],
                item["computed"],
                item["status"],
            )
            for item in data["claims"]
        ]
        return cls(data["params"], claims, data["summary"])

    def summary_lines(self):
        """Return human readable lines, one per claim."""
        lines = [
            ", ".join(f"{key}={val}" for key, val in jsonable(self.params).items())
        ]
        for key, val in jsonable(self.summary).items():
            lines.append(f"  {key}: {val}")
        for item in self.claims:
            lines.append(
                f"  [{item.status.value}] {item.name}: expected "
                f"{jsonable(item.expected)}, computed {jsonable(item.computed)}"
            )
        return lines
