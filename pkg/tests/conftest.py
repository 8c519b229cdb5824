"""Provide common pytest options and markers."""
import pytest


def pytest_addoption(parser):
    """Add the option to run slow tests."""
    parser.addoption(
        "--runslow", action="store_true", default=False, help="Run slow tests."
    )


def pytest_collection_modifyitems(config, items):
    """Skip tests marked slow unless --runslow is given."""
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
