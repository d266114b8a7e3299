"""Enhanced compressed matching statistics of a document against a reference.

Positions in the document are 0-based; rows index the reference suffix array.
``x`` is coded 0 for S (``Uc`` sorts before the reference suffix at the
insert point) and 1 for L.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._backend import kernels
from .alphabet import DOC_END, check_terminated
from .reference_index import ReferenceIndex

X_S = 0
X_L = 1


class AugmentationError(ValueError):
    """The document uses a symbol the (augmented) reference does not contain."""


class SaInterval(NamedTuple):
    s: int
    e: int
    match_len: int

    @property
    def singleton(self) -> bool:
        return self.s == self.e


class ExtensionOutcome(NamedTuple):
    interval: SaInterval | None
    gap: int | None

    @property
    def empty(self) -> bool:
        return self.interval is None


class HeadRecord(NamedTuple):
    doc: int
    j: int
    ip: int
    q: int
    ell: int
    x: str
    c: int


class MatchCounters(NamedTuple):
    heads: int
    lcp_contractions: int
    fast_contractions: int


@dataclass(eq=False)
class DocHeads:
    """Insert-head columns of one document, sorted by position ``j``."""

    j: np.ndarray
    ip: np.ndarray
    q: np.ndarray
    ell: np.ndarray
    x: np.ndarray
    c: np.ndarray
    length: int
    counters: MatchCounters

    def __len__(self):
        return len(self.j)

    def records(self, doc: int = 0) -> list[HeadRecord]:
        return [
            HeadRecord(doc, int(j), int(ip), int(q), int(ell), "SL"[int(x)], int(c))
            for j, ip, q, ell, x, c in zip(self.j, self.ip, self.q, self.ell, self.x, self.c)
        ]


def full_interval(ref: ReferenceIndex) -> SaInterval:
    return SaInterval(0, ref.n - 1, 0)


def _next_symbol(ref: ReferenceIndex, row: int, offset: int) -> int:
    return int(ref.text[ref.sa[row] + offset])


def right_extension(ref: ReferenceIndex, iv: SaInterval, c: int) -> ExtensionOutcome:
    """Extend the ``U``-interval by symbol ``c`` with two binary searches.

    On failure, ``gap`` is the first row of ``iv`` whose next symbol exceeds
    ``c``; rows ``iv.s .. gap-1`` continue ``U`` with a smaller symbol.
    """
    s, e, ml = iv
    lo, hi = s, e + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _next_symbol(ref, mid, ml) < c:
            lo = mid + 1
        else:
            hi = mid
    if lo > e or _next_symbol(ref, lo, ml) != c:
        return ExtensionOutcome(None, lo)
    start = lo
    hi = e + 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _next_symbol(ref, mid, ml) <= c:
            lo = mid + 1
        else:
            hi = mid
    return ExtensionOutcome(SaInterval(start, lo - 1, ml + 1), None)


def left_contraction(ref: ReferenceIndex, iv: SaInterval) -> SaInterval:
    """``cY``-interval -> ``Y``-interval, widened with PSV/NSV jumps over LCP."""
    if iv.match_len < 1:
        raise ValueError("cannot contract an empty match")
    y = iv.match_len - 1
    if y == 0:
        return full_interval(ref)
    lcp = ref.lcp
    sv = ref.smaller
    k = int(ref.isa[ref.sa[iv.s] + 1])
    while lcp[k] >= y:
        k = int(sv.psv_array[k])
    s = k
    k = int(ref.isa[ref.sa[iv.e] + 1]) + 1
    while k < ref.n and lcp[k] >= y:
        k = int(sv.nsv_array[k])
    return SaInterval(s, k - 1, y)


def insert_point(iv: SaInterval, gap: int) -> tuple[int, int]:
    """(ip, x) from a failed extension of the ``U``-interval ``iv``."""
    if gap > iv.s:
        return gap - 1, X_L
    return iv.s, X_S


def check_document(ref: ReferenceIndex, doc: np.ndarray) -> None:
    check_terminated(doc, DOC_END)
    present = np.zeros(256, dtype=bool)
    present[ref.text] = True
    present[DOC_END] = True
    unseen = np.flatnonzero(~present[doc])
    if len(unseen):
        sym = int(doc[unseen[0]])
        raise AugmentationError(
            f"symbol {sym!r} at position {int(unseen[0])} is absent from the reference; re-augment"
        )


def compute_ecms(ref: ReferenceIndex, doc: np.ndarray, heuristic: bool = True) -> DocHeads:
    """Insert-heads of ``doc`` with their enhanced matching statistics."""
    doc = np.asarray(doc, dtype=np.uint8)
    check_document(ref, doc)
    j, ip, q, ell, x, c, counters = kernels.ecms(
        ref.text, ref.sa, ref.isa, ref.lcp,
        ref.smaller.psv_array, ref.smaller.nsv_array,
        ref.block_max, ref.block_size, doc, bool(heuristic),
    )
    return DocHeads(j, ip, q, ell, x, c, len(doc), MatchCounters(*counters))


class CmsTriple(NamedTuple):
    j: int
    p: int
    ell: int


def compute_cms(ref: ReferenceIndex, doc: np.ndarray) -> list[CmsTriple]:
    """Plain compressed matching statistics: one ``(j, p, ell)`` per head.

    ``p`` is the reference position at the first row of the matching
    interval. Interval-at-a-time and meant for small inputs; the GSA path only
    needs :func:`compute_ecms`.
    """
    doc = np.asarray(doc, dtype=np.uint8)
    check_document(ref, doc)
    iv = full_interval(ref)
    out: list[CmsTriple] = []
    prev = 0
    for i in range(len(doc)):
        if i > 0 and iv.match_len > 0:
            iv = left_contraction(ref, iv)
        while i + iv.match_len < len(doc):
            step = right_extension(ref, iv, int(doc[i + iv.match_len]))
            if step.empty:
                break
            iv = step.interval
        ell = iv.match_len
        if i == 0 or ell > prev - 1:
            out.append(CmsTriple(i, int(ref.sa[iv.s]) if ell else -1, ell))
        prev = ell
    return out


def ms_from_cms(cms: list[CmsTriple], length: int) -> list[tuple[int, int]]:
    """Expand heads to ``(p, ell)`` per position; ``p = -1`` where ``ell = 0``."""
    out = []
    for k, (j, p, ell) in enumerate(cms):
        end = cms[k + 1].j if k + 1 < len(cms) else length
        for i in range(j, end):
            e = ell - (i - j)
            out.append((p + i - j, e) if e > 0 else (-1, 0))
    return out
