"""Test validators."""
import os
from unittest import mock

import pytest
import voluptuous as vol

from bwcousins.const import Eps
from bwcousins.exceptions import LatticeError, SizeError
from bwcousins.validation import (
    check,
    code_dimension,
    is_budget,
    is_cousin_params,
    is_eps,
    norm_bound,
    safe_threads,
)


@pytest.mark.parametrize(
    "value, expected",
    [("+", Eps.PLUS), ("-", Eps.MINUS), ("minus", Eps.MINUS), (1, Eps.PLUS)],
)
def test_is_eps(value, expected):
    """Test eigenvalue signs."""
    assert is_eps(value) is expected


@pytest.mark.parametrize("value", ["?", 0, None])
def test_is_eps_invalid(value):
    """Test invalid eigenvalue signs."""
    with pytest.raises(vol.Invalid):
        is_eps(value)


def test_eps_symbol():
    """Test the short symbols."""
    assert Eps.PLUS.symbol == "+"
    assert Eps.from_symbol(-1).symbol == "-"


@pytest.mark.parametrize(
    "value, expected", [("1e8", 10**8), ("250", 250), (12, 12), (1.0e3, 1000)]
)
def test_is_budget(value, expected):
    """Test budgets in their accepted spellings."""
    assert is_budget(value) == expected


@pytest.mark.parametrize("value", ["2.5", "abc", 0, -3, None])
def test_is_budget_invalid(value):
    """Test invalid budgets."""
    with pytest.raises(vol.Invalid):
        is_budget(value)


def test_cousin_params():
    """Test the (d, k, eps) ranges of first cousins."""
    assert is_cousin_params({"d": 5, "k": 2}) == {"d": 5, "k": 2, "eps": Eps.PLUS}
    assert is_cousin_params({"d": "7", "k": 3, "eps": "-"})["eps"] is Eps.MINUS
    for d, k in ((4, 2), (5, 3), (1, 1), (10, 1)):
        with pytest.raises(vol.Invalid):
            is_cousin_params({"d": d, "k": k})


def test_norm_bound():
    """Test norm bounds are non-negative rationals."""
    assert norm_bound("9/2") * 2 == 9
    with pytest.raises(vol.Invalid):
        norm_bound("-1")


def test_check():
    """Test check raises the requested error."""
    assert check(code_dimension, "9") == 9
    with pytest.raises(SizeError):
        check(code_dimension, 10)
    with pytest.raises(LatticeError):
        check(code_dimension, 0, LatticeError)


def test_safe_threads():
    """Test thread counts."""
    assert safe_threads(3) == 3
    with mock.patch.dict(os.environ, {}, clear=True):
        assert safe_threads() == 1
    assert safe_threads("zero") == 1
