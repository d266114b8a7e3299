"""Ordering suffixes of the collection from their enhanced matching statistics.

Comparators return -1, 0 or 1. For ``partial_compare`` a 0 means the entries
are identical and the order is not yet decided; for the full comparators it
means the two arguments are the same suffix.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alphabet import DOC_END
from .cms_store import ECMSStore, EmsEntry, ems_at, ihead_pred
from .reference_index import ReferenceIndex
from .suffix_kernels import InvariantError

LESS, TIE, GREATER = -1, 0, 1
EQUAL = TIE


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def partial_key(e: EmsEntry) -> tuple[int, int, int, int]:
    """Sort key: ip, then S before L, then ell ascending on the S side and
    descending on the L side, then mismatch symbol."""
    x = 0 if e.x == "S" else 1
    return (e.ip, x, e.ell if x == 0 else -e.ell, e.c)


def partial_compare(a: EmsEntry, b: EmsEntry) -> int:
    ka, kb = partial_key(a), partial_key(b)
    if ka < kb:
        return LESS
    if ka > kb:
        return GREATER
    return TIE


def partial_keys(ip, x, ell, c):
    """Column form of ``partial_key`` for ``np.lexsort`` (least significant first)."""
    ell = np.asarray(ell, dtype=np.int64)
    signed = np.where(np.asarray(x) == 0, ell, -ell)
    return [np.asarray(c), signed, np.asarray(x), np.asarray(ip)]


@dataclass(eq=False)
class HeadRanks:
    """Global rank of every insert-head suffix; ``offsets[d]`` is the global
    id of document ``d``'s first head."""

    rank: np.ndarray
    offsets: np.ndarray

    def rank_of(self, d: int, h: int) -> int:
        return int(self.rank[self.offsets[d] + h])


def tiebreak_head(store: ECMSStore, d: int, i: int, ell: int) -> int:
    """Head index used to break an ems tie at ``(d, i)``: the first insert-head
    after ``i``.

    Two positions with equal entries continue the same run, and whether a run
    breaks before the mismatch symbol depends only on ``U`` and ``c``. So the
    first later head sits at the same offset in both, at most ``ell`` away.
    Later heads inside the match need not line up.
    """
    h = ihead_pred(store, d, i) + 1
    j = store.docs[d].j
    if h >= len(j) or j[h] > i + ell:
        raise InvariantError(f"no insert-head in ({i}, {i + ell}] of document {d}")
    return h


def compare_with_ranks(store: ECMSStore, ref: ReferenceIndex, ranks: HeadRanks,
                       a: tuple[int, int], b: tuple[int, int]) -> int:
    if a == b:
        return EQUAL
    (da, ia), (db, ib) = a, b
    ea, eb = ems_at(store, ref, da, ia), ems_at(store, ref, db, ib)
    pc = partial_compare(ea, eb)
    if pc != TIE:
        return pc
    if ea.c == DOC_END:
        # both are U$; equal strings, so the document index decides
        return _sign(da - db)
    ha = tiebreak_head(store, da, ia, ea.ell)
    hb = tiebreak_head(store, db, ib, eb.ell)
    ra, rb = ranks.rank_of(da, ha), ranks.rank_of(db, hb)
    if ra == rb:
        raise InvariantError(f"distinct suffixes {a} and {b} reduced to the same insert-head")
    return _sign(ra - rb)


def compare_iterative(store: ECMSStore, ref: ReferenceIndex,
                      a: tuple[int, int], b: tuple[int, int]) -> int:
    """Decide the order by repeatedly jumping to the insert-heads that cover
    the mismatch symbols, without any precomputed ranks."""
    if a == b:
        return EQUAL
    (da, ia), (db, ib) = a, b
    while True:
        if da == db and ia == ib:
            raise InvariantError(f"{a} and {b} reduced to the same position")
        ea, eb = ems_at(store, ref, da, ia), ems_at(store, ref, db, ib)
        pc = partial_compare(ea, eb)
        if pc != TIE:
            return pc
        if ea.c == DOC_END:
            return _sign(da - db)
        ja = int(store.docs[da].j[tiebreak_head(store, da, ia, ea.ell)])
        jb = int(store.docs[db].j[tiebreak_head(store, db, ib, eb.ell)])
        if ja - ia != jb - ib:
            raise InvariantError(
                f"insert-heads after ({da},{ia}) and ({db},{ib}) are not aligned: {ja - ia} != {jb - ib}"
            )
        ia, ib = ja, jb
