"""Storage of insert-heads with a sampled + differential predecessor layer."""
from __future__ import annotations

import struct
from bisect import bisect_right
from dataclasses import dataclass
from typing import BinaryIO, NamedTuple

import numpy as np

from .matching_stats import DocHeads, MatchCounters
from .reference_index import ReferenceIndex
from .suffix_kernels import InvariantError

DEFAULT_PRED_SAMPLE = 32

MAGIC = b"ECMS"
VERSION = 1
RECORD_DTYPE = np.dtype(
    [("j", "<u8"), ("ip", "<u8"), ("q", "<u8"), ("ell", "<u8"), ("x", "u1"), ("c", "u1")]
)


class EmsEntry(NamedTuple):
    q: int
    ell: int
    x: str
    c: int
    ip: int


@dataclass(eq=False)
class ECMSStore:
    docs: list[DocHeads]
    samples: list[np.ndarray]
    deltas: list[np.ndarray]
    b_pred: int

    @property
    def chi_prime(self) -> int:
        return sum(len(d) for d in self.docs)

    @property
    def chi(self) -> int:
        return sum(d.counters.heads for d in self.docs)

    def __len__(self):
        return len(self.docs)

    def head_offsets(self) -> np.ndarray:
        """Global id of the first head of each document (plus a final total)."""
        return np.concatenate(([0], np.cumsum([len(d) for d in self.docs]))).astype(np.int64)


def build_store(doc_heads: list[DocHeads], b_pred: int = DEFAULT_PRED_SAMPLE) -> ECMSStore:
    if b_pred < 1:
        raise ValueError("b_pred must be >= 1")
    samples, deltas = [], []
    for d, heads in enumerate(doc_heads):
        j = heads.j
        if len(j) == 0 or j[0] != 0:
            raise InvariantError(f"document {d}: first insert-head must be position 0")
        diff = np.diff(j)
        if (diff <= 0).any():
            raise InvariantError(f"document {d}: head positions not strictly increasing")
        if len(diff) and diff.max() >= 2**32:
            raise InvariantError(f"document {d}: head gap does not fit 32 bits")
        samples.append(j[::b_pred].copy())
        deltas.append(diff.astype(np.uint32))
    return ECMSStore(list(doc_heads), samples, deltas, int(b_pred))


def ihead_pred(store: ECMSStore, d: int, i: int) -> int:
    """Index of the rightmost insert-head of document ``d`` at or before ``i``."""
    heads = store.docs[d]
    if not 0 <= i < heads.length:
        raise IndexError(f"position {i} outside document {d} of length {heads.length}")
    samples = store.samples[d]
    deltas = store.deltas[d]
    k = bisect_right(samples, i) - 1
    h = k * store.b_pred
    pos = int(samples[k])
    last = len(heads) - 1
    while h < last:
        nxt = pos + int(deltas[h])
        if nxt > i:
            break
        pos = nxt
        h += 1
    return h


def ems_at(store: ECMSStore, ref: ReferenceIndex, d: int, i: int) -> EmsEntry:
    h = ihead_pred(store, d, i)
    heads = store.docs[d]
    k = i - int(heads.j[h])
    q = int(heads.q[h]) + k
    return EmsEntry(q, int(heads.ell[h]) - k, "SL"[int(heads.x[h])], int(heads.c[h]), int(ref.isa[q]))


def expand_positions(store: ECMSStore, d: int, positions: np.ndarray, isa: np.ndarray):
    """Vectorized ``ems_at`` over sorted or unsorted positions of one document.

    Returns ``(head_index, q, ell, x, c, ip)`` arrays.
    """
    heads = store.docs[d]
    positions = np.asarray(positions, dtype=np.int64)
    h = np.searchsorted(heads.j, positions, side="right") - 1
    k = positions - heads.j[h]
    q = heads.q[h] + k
    return h, q, heads.ell[h] - k, heads.x[h], heads.c[h], isa[q]


def dump_store(store: ECMSStore, fh: BinaryIO) -> None:
    """Binary layout: ``ECMS``, u8 version, u32 b_pred, u64 docs, then per
    document a u64 record count followed by packed little-endian records."""
    fh.write(MAGIC)
    fh.write(struct.pack("<BIQ", VERSION, store.b_pred, len(store.docs)))
    for heads in store.docs:
        rec = np.empty(len(heads), dtype=RECORD_DTYPE)
        rec["j"], rec["ip"], rec["q"] = heads.j, heads.ip, heads.q
        rec["ell"], rec["x"], rec["c"] = heads.ell, heads.x, heads.c
        fh.write(struct.pack("<Q", len(rec)))
        fh.write(rec.tobytes())


def load_store(fh: BinaryIO) -> ECMSStore:
    if fh.read(4) != MAGIC:
        raise ValueError("not an eCMS dump (bad magic)")
    version, b_pred, m = struct.unpack("<BIQ", fh.read(13))
    if version != VERSION:
        raise ValueError(f"unsupported eCMS dump version {version}")
    docs = []
    for _ in range(m):
        (count,) = struct.unpack("<Q", fh.read(8))
        rec = np.frombuffer(fh.read(count * RECORD_DTYPE.itemsize), dtype=RECORD_DTYPE)
        if len(rec) != count:
            raise ValueError("truncated eCMS dump")
        i64 = np.int64
        ell = rec["ell"].astype(i64)
        j = rec["j"].astype(i64)
        length = int(j[-1] + ell[-1] + 1)
        docs.append(DocHeads(
            j, rec["ip"].astype(i64), rec["q"].astype(i64), ell,
            rec["x"].copy(), rec["c"].copy(), length, MatchCounters(0, 0, 0),
        ))
    return build_store(docs, b_pred)
