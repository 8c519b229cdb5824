"""Save and load lattice, isometry and report documents."""
from enum import Enum
from fractions import Fraction
import json
import logging
import os

import voluptuous as vol

from .brw_action import MonomialIsometry, isometry_as_dict, isometry_from_dict
from .exact_linalg import Dyadic
from .exceptions import BWCError, DocumentError
from .gf2_codes import BitWord
from .lattice_core import Lattice, ThetaSeries, lattice_as_dict, lattice_from_dict
from .report import VerificationReport

_LOGGER = logging.getLogger(__name__)


class DocumentFile:
    """Organize writing and reading of a single document file."""

    def __init__(self, path):
        """Set up DocumentFile instance."""
        self.path = os.fspath(path)
        self.backup = f"{self.path}.bak"

    def __repr__(self):
        """Return the representation."""
        return f"<{self.__class__.__name__} {self.path}>"

    def _save_json(self, filename, document):
        """Save document to json file."""
        with open(filename, "w", encoding="utf-8") as file_handle:
            json.dump(document, file_handle, cls=BWCJSONEncoder, indent=2)
            file_handle.write("\n")
            file_handle.flush()
            os.fsync(file_handle.fileno())

    def _load_json(self, filename):
        """Load document from json file."""
        with open(filename, "r", encoding="utf-8") as file_handle:
            return json.load(file_handle, cls=BWCJSONDecoder)

    def save(self, document):
        """Write document, replacing the file only once it is complete."""
        fname = os.path.realpath(self.path)
        exists = os.path.isfile(fname)
        dirname = os.path.dirname(fname)
        if not os.access(dirname, os.W_OK) or exists and not os.access(fname, os.W_OK):
            raise DocumentError(f"Permission denied when writing to {fname}")
        split_fname = os.path.splitext(fname)
        tmp_fname = f"{split_fname[0]}.tmp{split_fname[1]}"
        _LOGGER.debug("Saving document to %s", fname)
        self._perform_file_action(tmp_fname, "save", document)
        if exists:
            os.rename(fname, self.backup)
        os.rename(tmp_fname, fname)
        if exists:
            os.remove(self.backup)
        _LOGGER.info("Wrote %s", fname)

    def load(self):
        """Read the document, falling back to a leftover backup file."""
        for path in (self.path, self.backup):
            if os.path.isfile(path) and os.access(path, os.R_OK):
                _LOGGER.debug("Loading document from %s", path)
                try:
                    return self._perform_file_action(path, "load")
                except ValueError as exc:
                    raise DocumentError(f"Bad file contents: {path}") from exc
            _LOGGER.debug("File does not exist or is not readable: %s", path)
        raise DocumentError(f"File does not exist or is not readable: {self.path}")

    def _perform_file_action(self, filename, action, *args):
        """Perform action on specific file types.

        Dynamic dispatch function for performing actions on
        specific file types.
        """
        ext = os.path.splitext(filename)[1]
        if ext.endswith(".bak"):
            ext = os.path.splitext(filename[: -len(".bak")])[1]
        try:
            func = getattr(self, f"_{action}_{ext[1:]}")
        except AttributeError as exc:
            raise DocumentError(f"Unsupported file type {ext[1:]}") from exc
        return func(filename, *args)


class BWCJSONEncoder(json.JSONEncoder):
    """JSON encoder."""

    def default(self, o):  # pylint: disable=too-many-return-statements
        """Serialize obj into JSON."""
        if isinstance(o, Lattice):
            return lattice_as_dict(o)
        if isinstance(o, MonomialIsometry):
            return isometry_as_dict(o)
        if isinstance(o, BitWord):
            return {"d": o.d, "word": o.to_hex()}
        if isinstance(o, ThetaSeries):
            return {"bound": str(o.bound), "theta": o.as_dict()}
        if isinstance(o, VerificationReport):
            return o.as_dict()
        if isinstance(o, Fraction):
            return int(o) if o.denominator == 1 else str(o)
        if isinstance(o, Dyadic):
            return str(o)
        if isinstance(o, Enum):
            return o.value
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        if hasattr(o, "as_dict"):
            return o.as_dict()
        return json.JSONEncoder.default(self, o)


class BWCJSONDecoder(json.JSONDecoder):
    """JSON decoder."""

    def __init__(self):
        """Set up decoder."""
        json.JSONDecoder.__init__(self, object_hook=self.dict_to_object)

    def dict_to_object(self, obj):  # pylint: disable=no-self-use
        """Return object from dict."""
        if not isinstance(obj, dict):
            return obj
        try:
            if "basis" in obj and "d" in obj:
                return lattice_from_dict(obj)
            if all(key in obj for key in ("sign", "linear", "translate")):
                return isometry_from_dict(obj)
            if all(key in obj for key in ("params", "claims")):
                return VerificationReport.from_dict(obj)
            if set(obj) == {"d", "word"}:
                return BitWord.from_hex(obj["d"], obj["word"])
            if set(obj) == {"bound", "theta"}:
                counts = {Fraction(key): val for key, val in obj["theta"].items()}
                return ThetaSeries(Fraction(obj["bound"]), counts)
        except (vol.Invalid, BWCError, KeyError, TypeError) as exc:
            raise ValueError(f"Invalid document: {exc}") from exc
        return obj


def save_document(path, obj):
    """Write obj as a document to path."""
    DocumentFile(path).save(obj)


def load_document(path):
    """Return the object stored in the document at path."""
    return DocumentFile(path).load()

