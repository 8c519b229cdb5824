"""Test persistence."""
from fractions import Fraction
import json
import os
from unittest import mock

import pytest

from bwcousins.barneswall import build_bw
from bwcousins.brw_action import MonomialIsometry
from bwcousins.const import ClaimStatus, Eps
from bwcousins.exceptions import DocumentError
from bwcousins.gf2_codes import BitWord
from bwcousins.lattice_core import theta
from bwcousins.persistence import (
    BWCJSONEncoder,
    DocumentFile,
    load_document,
    save_document,
)
from bwcousins.report import Claim, VerificationReport

# pylint: disable=redefined-outer-name


@pytest.fixture
def e8():
    """Return BW_3."""
    return build_bw(3).lattice


@pytest.fixture
def report():
    """Return a report with a passed and a bounded claim."""
    return VerificationReport(
        {"d": 5, "k": 2, "eps": "+"},
        [
            Claim.compare("rank", "cousin rank formula", 20, 20),
            Claim(
                "min-norm",
                "minimum norm of first cousins",
                "<= 4",
                Fraction(3, 2),
                ClaimStatus.BOUNDED,
            ),
        ],
        {"rank": 20, "det": Fraction(1)},
    )


def test_lattice_document(e8, tmpdir):
    """Test a lattice survives a write and a read."""
    path = tmpdir.join("bw3.json").strpath
    save_document(path, e8)
    assert load_document(path) == e8
    with open(path, encoding="utf-8") as file_handle:
        text = file_handle.read()
    assert text.endswith("\n")
    assert json.loads(text)["d"] == 3


def test_overwrite_removes_backup(e8, tmpdir):
    """Test saving over an existing file leaves no backup behind."""
    path = tmpdir.join("bw3.json").strpath
    save_document(path, e8)
    save_document(path, build_bw(2).lattice)
    assert not os.path.isfile(f"{path}.bak")
    assert not os.path.isfile(tmpdir.join("bw3.tmp.json").strpath)
    assert load_document(path) == build_bw(2).lattice


def test_load_backup(e8, tmpdir):
    """Test a leftover backup is read when the file is missing."""
    path = tmpdir.join("bw3.json").strpath
    save_document(path, e8)
    os.rename(path, f"{path}.bak")
    assert DocumentFile(path).load() == e8


def test_report_document(report, tmpdir):
    """Test a report keeps its claims and statuses."""
    path = tmpdir.join("report.json").strpath
    save_document(path, report)
    loaded = load_document(path)
    assert isinstance(loaded, VerificationReport)
    assert loaded.as_dict() == report.as_dict()
    assert loaded.claim("min-norm").status is ClaimStatus.BOUNDED
    assert loaded.exit_code == 3


def test_small_documents(e8, tmpdir):
    """Test isometries, words and theta series."""
    path = tmpdir.join("doc.json").strpath
    isometry = MonomialIsometry(3, 0b11110000, (2, 1, 4), 3)
    save_document(path, isometry)
    assert load_document(path) == isometry
    word = BitWord.from_points(4, [0, 5, 9])
    save_document(path, word)
    assert load_document(path) == word
    series = theta(e8, 4)
    save_document(path, series)
    assert load_document(path) == series


def test_plain_document(tmpdir):
    """Test documents without a known shape load as dicts."""
    path = tmpdir.join("plain.json").strpath
    save_document(path, {"d": 5, "k": 2, "jno": 12})
    assert load_document(path) == {"d": 5, "k": 2, "jno": 12}


def test_missing_file(tmpdir):
    """Test reading a missing file."""
    with pytest.raises(DocumentError):
        load_document(tmpdir.join("missing.json").strpath)


@pytest.mark.parametrize(
    "text", ["{not json", '{"d": 3, "basis": [["1/3"]]}', '{"d": 3, "word": "zz"}']
)
def test_bad_contents(tmpdir, text):
    """Test malformed documents raise a document error."""
    path = tmpdir.join("bad.json")
    path.write(text)
    with pytest.raises(DocumentError):
        load_document(path.strpath)


def test_unsupported_type(e8, tmpdir):
    """Test only json files are written."""
    with pytest.raises(DocumentError):
        save_document(tmpdir.join("bw3.pickle").strpath, e8)


def test_permission_denied(e8, tmpdir):
    """Test a read only location is reported."""
    with mock.patch("bwcousins.persistence.os.access", return_value=False):
        with pytest.raises(DocumentError):
            save_document(tmpdir.join("bw3.json").strpath, e8)


def test_encoder():
    """Test rationals, enums and sets are encoded."""
    text = json.dumps(
        {
            "half": Fraction(1, 2),
            "two": Fraction(4, 2),
            "status": ClaimStatus.PASS,
            "eps": Eps.MINUS,
            "points": {3, 1},
        },
        cls=BWCJSONEncoder,
    )
    assert json.loads(text) == {
        "half": "1/2",
        "two": 2,
        "status": "pass",
        "eps": -1,
        "points": [1, 3],
    }
