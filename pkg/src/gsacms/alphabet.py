"""Symbol coding shared by every module.

Texts are ``uint8`` numpy arrays. Code 0 is the reference terminator ``#``,
code 1 the document terminator ``$``; every other byte keeps its value, so the
order ``# < $ < any real symbol`` holds without remapping.
"""
from __future__ import annotations

import numpy as np

REF_END = 0
DOC_END = 1

_DISPLAY = {REF_END: "#", DOC_END: "$"}


class InputFormatError(ValueError):
    """Raised when a text violates the terminator or reserved-byte rules."""


def _as_bytes(seq: str | bytes | bytearray) -> bytes:
    if isinstance(seq, str):
        return seq.encode("latin-1")
    return bytes(seq)


def _check_body(body: bytes, what: str) -> None:
    if b"\x00" in body or b"\x01" in body:
        raise InputFormatError(f"{what} contains reserved byte 0x00 or 0x01")


def encode_reference(seq: str | bytes) -> np.ndarray:
    """Raw reference sequence -> text ending with ``#``."""
    body = _as_bytes(seq)
    _check_body(body, "reference")
    out = np.empty(len(body) + 1, dtype=np.uint8)
    out[:-1] = np.frombuffer(body, dtype=np.uint8)
    out[-1] = REF_END
    return out


def encode_document(seq: str | bytes) -> np.ndarray:
    """Raw document sequence -> text ending with ``$``."""
    body = _as_bytes(seq)
    _check_body(body, "document")
    out = np.empty(len(body) + 1, dtype=np.uint8)
    out[:-1] = np.frombuffer(body, dtype=np.uint8)
    out[-1] = DOC_END
    return out


def from_display(s: str) -> np.ndarray:
    """Parse a human-written text such as ``"ACGT#"`` or ``"AC$"``.

    Only a trailing ``#``/``$`` is treated as a terminator.
    """
    if s.endswith("#"):
        return encode_reference(s[:-1])
    if s.endswith("$"):
        return encode_document(s[:-1])
    raise InputFormatError(f"display text {s!r} has no terminator")


def to_display(text) -> str:
    return "".join(_DISPLAY.get(int(c), chr(int(c))) for c in text)


def check_terminated(text: np.ndarray, terminator: int | None = None) -> None:
    """The last symbol must be a terminator that is unique and minimal."""
    if len(text) == 0:
        raise InputFormatError("empty text")
    last = int(text[-1])
    if terminator is not None and last != terminator:
        raise InputFormatError(f"text must end with terminator code {terminator}")
    if last not in (REF_END, DOC_END):
        raise InputFormatError("text does not end with a terminator")
    body = text[:-1]
    if len(body) and int(body.min()) < 2:
        raise InputFormatError("terminator is not unique and strictly minimal")
