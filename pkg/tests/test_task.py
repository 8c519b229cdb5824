"""Test task module."""
import os
from unittest import mock

import pytest

from bwcousins.const import ClaimStatus
from bwcousins.exceptions import BudgetExceeded, LatticeError
from bwcousins.report import Claim
from bwcousins.task import CheckRunner
from bwcousins.util import Registry

# pylint: disable=redefined-outer-name


@pytest.fixture
def checks():
    """Return a registry with passing, failing and budgeted checks."""
    registry = Registry()

    @registry.register("first")
    def _first(context):
        """Return two claims."""
        return [
            Claim.compare("first", "test", context, context),
            Claim.compare("first-extra", "test", 1, 1),
        ]

    @registry.register("budget")
    def _budget(context):  # pylint: disable=unused-argument
        """Run out of budget."""
        raise BudgetExceeded(11, 10)

    @registry.register("broken")
    def _broken(context):  # pylint: disable=unused-argument
        """Raise a library error."""
        raise LatticeError("not integral")

    @registry.register("last")
    def _last(context):  # pylint: disable=unused-argument
        """Return no claims."""
        return []

    return registry


def test_registry_duplicate():
    """Test a name can only be registered once."""
    registry = Registry()
    registry.register("name")(len)
    with pytest.raises(ValueError):
        registry.register("name")(len)


def test_registry_order(checks):
    """Test checks are kept in the order they were registered."""
    assert list(checks) == ["first", "budget", "broken", "last"]
    registry = Registry()
    assert registry.register("length")(len) is len
    assert registry["length"] is len


@pytest.mark.parametrize("threads", [1, 3])
def test_run(checks, threads, caplog):
    """Test claims keep registry order and errors become claims."""
    claims = CheckRunner(checks, threads).run("context")
    assert [claim.name for claim in claims] == [
        "first",
        "first-extra",
        "budget",
        "broken",
    ]
    assert claims[0].status is ClaimStatus.PASS
    assert claims[2].status is ClaimStatus.SKIPPED_BUDGET
    assert (claims[2].expected, claims[2].computed) == (10, 11)
    assert claims[3].status is ClaimStatus.FAIL
    assert claims[3].computed == "not integral"
    assert "ran out of budget" in caplog.text
    assert "failed with not integral" in caplog.text


def test_run_named(checks):
    """Test running a subset of checks."""
    claims = CheckRunner(checks).run("context", ["last", "first"])
    assert [claim.name for claim in claims] == ["first", "first-extra"]


@mock.patch.dict(os.environ, {"BWC_THREADS": "4"})
def test_threads_from_environment(checks):
    """Test the thread count is read from the environment."""
    assert CheckRunner(checks).threads == 4
    assert CheckRunner(checks, 2).threads == 2


@mock.patch.dict(os.environ, {"BWC_THREADS": "many"})
def test_bad_threads_from_environment(checks, caplog):
    """Test an invalid thread count falls back to one thread."""
    assert CheckRunner(checks).threads == 1
    assert "not a valid thread count" in caplog.text
