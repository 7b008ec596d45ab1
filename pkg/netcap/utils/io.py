"""File I/O support module."""
import json
from os import PathLike
from typing import Union

from netcap.exceptions import NetworkParseError


def read_json(text, source=None):
    """Decode a JSON document, reporting syntax errors with their position.

    Parameters
    ----------
    text: str
        The document
    source: optional, str, default=None
        Name of the file the document came from, used in error messages

    Returns
    -------
    object
        The decoded document

    Raises
    ------
    NetworkParseError
        If `text` is not valid JSON
    """
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise NetworkParseError(
            f"malformed JSON in {source or 'input'}: {ex.msg}",
            source=source,
            line=ex.lineno,
            column=ex.colno,
        ) from ex


def read_text(path: Union[str, PathLike]):
    """Read a UTF-8 file.

    Unreadable files and invalid UTF-8 are reported as `NetworkParseError`.
    """
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except UnicodeDecodeError as ex:
        raise NetworkParseError(
            f"{path} is not valid UTF-8: {ex.reason} at byte {ex.start}",
            source=str(path),
        ) from ex
    except OSError as ex:
        raise NetworkParseError(
            f"cannot read {path}: {ex.strerror or ex}", source=str(path)
        ) from ex


def dump_json(document):
    """Serialize `document` deterministically.

    Keys are sorted so that equal documents always produce identical bytes.
    """
    return json.dumps(document, sort_keys=True, indent=2) + "\n"
