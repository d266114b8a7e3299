"""Reading document collections and reading/writing GSA files.

GSA files store 0-based ``(doc, pos)`` pairs. Binary layout: ``GSA1``, a u8
field width (4 or 8), a u64 pair count, then the pairs interleaved as
little-endian unsigned integers. The text layout is one ``doc<TAB>pos`` line
per pair.
"""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

GSA_MAGIC = b"GSA1"
RESERVED = (0, 1)


class IngestError(ValueError):
    def __init__(self, path, line: int, msg: str):
        super().__init__(f"{path}:{line}: {msg}")
        self.path, self.line = path, line


def _check_reserved(data: bytes, path, line: int) -> None:
    for b in RESERVED:
        if bytes([b]) in data:
            raise IngestError(path, line, f"reserved byte 0x{b:02x} in sequence")


def parse_fasta(data: bytes, path="<fasta>") -> list[bytes]:
    """Record bodies, uppercased with line breaks removed."""
    docs: list[bytes] = []
    body: list[bytes] | None = None
    header_line = 0
    for lineno, raw in enumerate(data.splitlines(), 1):
        line = raw.strip(b"\r")
        if line.startswith(b">"):
            if body is not None:
                if not body:
                    raise IngestError(path, header_line, "empty record")
                docs.append(b"".join(body))
            if not line[1:].strip():
                raise IngestError(path, lineno, "header without a name")
            body, header_line = [], lineno
        elif line.strip():
            if body is None:
                raise IngestError(path, lineno, "sequence data before the first '>' header")
            _check_reserved(line, path, lineno)
            body.append(line.strip().upper())
    if body is None:
        raise IngestError(path, 1, "no FASTA records")
    if not body:
        raise IngestError(path, header_line, "empty record")
    docs.append(b"".join(body))
    return docs


def parse_raw(data: bytes, path="<raw>") -> list[bytes]:
    """One document per line; a final newline is optional."""
    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    docs = []
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip(b"\r")
        if not line:
            raise IngestError(path, lineno, "empty document")
        _check_reserved(line, path, lineno)
        docs.append(line)
    if not docs:
        raise IngestError(path, 1, "no documents")
    return docs


def sniff_format(data: bytes) -> str:
    return "fasta" if data.lstrip()[:1] == b">" else "raw"


def ingest(path, fmt: str = "auto") -> list[bytes]:
    data = Path(path).read_bytes()
    if fmt == "auto":
        fmt = sniff_format(data)
    if fmt == "fasta":
        return parse_fasta(data, path)
    if fmt == "raw":
        return parse_raw(data, path)
    raise ValueError(f"unknown input format {fmt!r}")


def ingest_many(paths, fmt: str = "auto") -> list[bytes]:
    """Documents of several files in argument order."""
    docs: list[bytes] = []
    for p in paths:
        docs.extend(ingest(p, fmt))
    return docs


def write_gsa_binary(gsa: np.ndarray, fh) -> None:
    gsa = np.asarray(gsa, dtype=np.int64).reshape(-1, 2)
    width = 4 if gsa.size == 0 or int(gsa.max()) < 2**32 else 8
    fh.write(GSA_MAGIC)
    fh.write(struct.pack("<BQ", width, len(gsa)))
    fh.write(gsa.astype(f"<u{width}").tobytes())


def read_gsa_binary(fh) -> np.ndarray:
    if fh.read(4) != GSA_MAGIC:
        raise ValueError("not a GSA file (bad magic)")
    head = fh.read(9)
    if len(head) != 9:
        raise ValueError("truncated GSA header")
    width, count = struct.unpack("<BQ", head)
    if width not in (4, 8):
        raise ValueError(f"bad field width {width}")
    payload = fh.read(2 * width * count)
    if len(payload) != 2 * width * count:
        raise ValueError("truncated GSA payload")
    return np.frombuffer(payload, dtype=f"<u{width}").astype(np.int64).reshape(-1, 2)


def write_gsa_tsv(gsa: np.ndarray, fh) -> None:
    np.savetxt(fh, np.asarray(gsa, dtype=np.int64).reshape(-1, 2), fmt="%d", delimiter="\t")


def read_gsa_tsv(fh) -> np.ndarray:
    rows = np.loadtxt(fh, dtype=np.int64, delimiter="\t", ndmin=2)
    return rows.reshape(-1, 2)


def write_gsa(gsa: np.ndarray, path, fmt: str = "binary") -> None:
    if fmt == "binary":
        with open(path, "wb") as fh:
            write_gsa_binary(gsa, fh)
    elif fmt == "tsv":
        with open(path, "w") as fh:
            write_gsa_tsv(gsa, fh)
    else:
        raise ValueError(f"unknown GSA format {fmt!r}")


def read_gsa(path) -> np.ndarray:
    """Either layout; binary is recognised by its magic."""
    with open(path, "rb") as fh:
        if fh.read(4) == GSA_MAGIC:
            fh.seek(0)
            return read_gsa_binary(fh)
    with open(path) as fh:
        return read_gsa_tsv(fh)
