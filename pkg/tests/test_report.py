"""Test verification claims and reports."""
from fractions import Fraction

import pytest
import voluptuous as vol

from bwcousins.const import ClaimStatus
from bwcousins.exact_linalg import Dyadic
from bwcousins.report import Claim, VerificationReport, jsonable


def test_jsonable():
    """Test conversion of exact values to JSON types."""
    assert jsonable(Fraction(3, 2)) == "3/2"
    assert jsonable(Fraction(4, 2)) == 2
    assert jsonable(Dyadic(1, 1)) == "1/2^1"
    assert jsonable(ClaimStatus.BOUNDED) == "bounded"
    assert jsonable((1, Fraction(1, 4))) == [1, "1/4"]
    assert jsonable({2: [Fraction(1)]}) == {"2": [1]}
    assert jsonable(True) is True
    assert jsonable(None) is None


def test_claim_compare():
    """Test claims pass on equal values only."""
    assert Claim.compare("rank", "rank formula", 8, 8).status is ClaimStatus.PASS
    claim = Claim.compare("rank", "rank formula", 8, 12)
    assert claim.status is ClaimStatus.FAIL
    assert claim.as_dict() == {
        "name": "rank",
        "source": "rank formula",
        "expected": 8,
        "computed": 12,
        "status": "fail",
    }


def test_exit_codes():
    """Test a failure outranks a bounded claim."""
    report = VerificationReport({"d": 3})
    assert report.exit_code == 0
    report.add(Claim("min-norm", "minimum", 2, None, ClaimStatus.BOUNDED))
    assert report.passed
    assert report.exit_code == 3
    report.add(Claim("skipped", "budget", 10, 11, ClaimStatus.SKIPPED_BUDGET))
    assert len(report.degraded) == 2
    report.add(Claim.compare("det", "determinant", 1, 2))
    assert not report.passed
    assert report.exit_code == 1


def test_claim_lookup():
    """Test claims are found by name."""
    report = VerificationReport({"d": 3}, [Claim.compare("rank", "rank", 8, 8)])
    assert report.claim("rank").computed == 8
    with pytest.raises(KeyError):
        report.claim("det")


def test_summary_lines():
    """Test the human readable summary."""
    report = VerificationReport(
        {"d": 5, "k": 1, "eps": "-"},
        [Claim.compare("det", "determinant", 1, Fraction(1))],
        {"rank": 8},
    )
    assert report.summary_lines() == [
        "d=5, k=1, eps=-",
        "  rank: 8",
        "  [pass] det: expected 1, computed 1",
    ]


def test_from_dict():
    """Test reading a report document."""
    report = VerificationReport.from_dict(
        {
            "params": {"d": 2},
            "claims": [
                {
                    "name": "even",
                    "source": "parity",
                    "expected": True,
                    "computed": True,
                    "status": "pass",
                }
            ],
        }
    )
    assert report.summary == {}
    assert report.claim("even").status is ClaimStatus.PASS
    with pytest.raises(vol.Invalid):
        VerificationReport.from_dict({"params": {"d": 2}})
    with pytest.raises(vol.Invalid):
        VerificationReport.from_dict(
            {
                "params": {},
                "claims": [
                    {
                        "name": "even",
                        "source": "parity",
                        "expected": True,
                        "computed": True,
                        "status": "maybe",
                    }
                ],
            }
        )
