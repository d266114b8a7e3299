from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alphabet import DOC_END, REF_END, check_terminated
from .suffix_kernels import (
    SmallerValueIndex,
    build_plcp,
    build_suffix_array_bytes,
    invert_permutation,
    plcp_to_lcp,
)

DEFAULT_BLOCK_SIZE = 256


def _longest_runs(docs) -> np.ndarray:
    """Longest run length of every byte value across ``docs``."""
    best = np.zeros(256, dtype=np.int64)
    for doc in docs:
        doc = np.asarray(doc, dtype=np.uint8)
        if len(doc) == 0:
            continue
        change = np.flatnonzero(doc[1:] != doc[:-1]) + 1
        starts = np.concatenate(([0], change))
        lengths = np.diff(np.concatenate((starts, [len(doc)])))
        np.maximum.at(best, doc[starts], lengths)
    return best


def augment_reference(ref_text: np.ndarray, docs) -> np.ndarray:
    """Append ``c * n_c`` for every symbol ``c`` the documents use but the
    reference lacks; ``n_c`` is the longest run of ``c`` in the documents.

    Runs are appended in symbol order, before the final ``#``.
    """
    ref_text = np.asarray(ref_text, dtype=np.uint8)
    check_terminated(ref_text, REF_END)
    runs = _longest_runs(docs)
    runs[REF_END] = runs[DOC_END] = 0
    present = np.zeros(256, dtype=bool)
    present[ref_text] = True
    missing = np.flatnonzero((runs > 0) & ~present)
    if len(missing) == 0:
        return ref_text.copy()
    extra = np.repeat(missing.astype(np.uint8), runs[missing])
    return np.concatenate((ref_text[:-1], extra, [REF_END])).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class ReferenceIndex:
    text: np.ndarray
    sa: np.ndarray
    isa: np.ndarray
    plcp: np.ndarray
    lcp: np.ndarray
    smaller: SmallerValueIndex
    block_size: int
    block_min: np.ndarray
    block_max: np.ndarray
    lcp_max: int

    @property
    def n(self) -> int:
        return len(self.text)

    @property
    def lcp_sum(self) -> int:
        return int(self.lcp.sum())

    def symbols(self) -> np.ndarray:
        return np.unique(self.text)


def _block_reduce(lcp: np.ndarray, b: int, op) -> np.ndarray:
    n = len(lcp)
    nblocks = -(-n // b)
    pad = nblocks * b - n
    fill = np.iinfo(np.int64).max if op is np.min else -1
    padded = np.concatenate((lcp, np.full(pad, fill, dtype=np.int64)))
    return op(padded.reshape(nblocks, b), axis=1)


def build_reference_index(ref_text: np.ndarray, docs=(), block_size: int = DEFAULT_BLOCK_SIZE) -> ReferenceIndex:
    """Augment ``ref_text`` against ``docs`` and build every per-reference array."""
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    text = augment_reference(ref_text, docs)
    sa = build_suffix_array_bytes(text)
    isa = invert_permutation(sa)
    plcp = build_plcp(text, sa)
    lcp = plcp_to_lcp(plcp, sa)
    return ReferenceIndex(
        text=text,
        sa=sa,
        isa=isa,
        plcp=plcp,
        lcp=lcp,
        smaller=SmallerValueIndex(lcp),
        block_size=int(block_size),
        block_min=_block_reduce(lcp, block_size, np.min),
        block_max=_block_reduce(lcp, block_size, np.max),
        lcp_max=int(lcp.max()),
    )
