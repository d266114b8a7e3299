"""Generalized suffix array construction driven by the eCMS.

Phases: reference index, eCMS per document, S* bucketing by insert point,
insert-head sorting through a metacharacter string, S* sorting, induction.
A GSA is an ``(N, 2)`` int64 array of ``(doc, pos)`` rows, both 0-based.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .alphabet import DOC_END, REF_END, encode_document, encode_reference
from .cms_store import DEFAULT_PRED_SAMPLE, ECMSStore, build_store, expand_positions
from .matching_stats import compute_ecms
from .reference_index import DEFAULT_BLOCK_SIZE, ReferenceIndex, build_reference_index
from .suffix_kernels import InvariantError, build_suffix_array_ints
from .suffix_order import HeadRanks, partial_keys

TYPE_L, TYPE_S, TYPE_S_STAR = 0, 1, 2


class Collection:
    """Documents as ``$``-terminated ``uint8`` arrays plus their concatenation."""

    def __init__(self, docs):
        docs = [np.asarray(d, dtype=np.uint8) for d in docs]
        if not docs:
            raise ValueError("empty collection")
        for k, d in enumerate(docs):
            if len(d) == 0 or d[-1] != DOC_END:
                raise ValueError(f"document {k} is not $-terminated")
        self.docs = docs
        self.offsets = np.concatenate(([0], np.cumsum([len(d) for d in docs]))).astype(np.int64)
        self.text = np.concatenate(docs)

    @classmethod
    def from_sequences(cls, seqs) -> "Collection":
        return cls([encode_document(s) for s in seqs])

    @property
    def m(self) -> int:
        return len(self.docs)

    @property
    def N(self) -> int:
        return int(self.offsets[-1])

    def __len__(self):
        return self.m

    def doc_start_mask(self) -> np.ndarray:
        mask = np.zeros(self.N, dtype=np.uint8)
        mask[self.offsets[:-1]] = 1
        return mask

    def to_pairs(self, global_pos: np.ndarray) -> np.ndarray:
        g = np.asarray(global_pos, dtype=np.int64)
        d = np.searchsorted(self.offsets, g, side="right") - 1
        return np.stack((d, g - self.offsets[d]), axis=1)

    def to_global(self, pairs) -> np.ndarray:
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        return self.offsets[pairs[:, 0]] + pairs[:, 1]


def _as_collection(docs) -> Collection:
    return docs if isinstance(docs, Collection) else Collection.from_sequences(docs)


def compute_type_array(doc: np.ndarray) -> np.ndarray:
    """L / S / S* code per position of a single ``$``-terminated document."""
    doc = np.asarray(doc, dtype=np.uint8)
    t = kernels.suffix_types(doc)
    out = t.copy()
    star = np.zeros(len(doc), dtype=bool)
    star[1:] = (t[1:] == TYPE_S) & (t[:-1] == TYPE_L)
    star[-1] = False  # the terminator stays plain S
    out[star] = TYPE_S_STAR
    return out


def _sstar_positions(collection: Collection, types: np.ndarray) -> np.ndarray:
    """Global S* positions, terminators excluded."""
    star = np.zeros(collection.N, dtype=bool)
    star[1:] = (types[1:] == TYPE_S) & (types[:-1] == TYPE_L)
    star[collection.offsets[:-1]] = False
    star[collection.text == DOC_END] = False
    return np.flatnonzero(star)


@dataclass(eq=False)
class MetaString:
    """One symbol per insert-head in document order, each document followed by
    its sentinel. Sentinel of document ``d`` is ``d``; metacharacters are
    ``m + dense_rank``."""

    symbols: np.ndarray
    alphabet_size: int
    head_positions: np.ndarray

    def suffix_array(self) -> np.ndarray:
        # The sentinels are unique but not minimal at the end; shift every
        # symbol up by one and close with a fresh 0.
        shifted = np.concatenate((self.symbols + 1, [0]))
        return build_suffix_array_ints(shifted, self.alphabet_size + 1)[1:]


def _head_columns(store: ECMSStore):
    cat = lambda name: np.concatenate([getattr(d, name) for d in store.docs])
    return cat("ip"), cat("x"), cat("ell"), cat("c")


def metacharacter_ranks(store: ECMSStore) -> np.ndarray:
    """Dense rank of each head's (ip, x, ell, c) tuple, by global head id."""
    ip, x, ell, c = _head_columns(store)
    order = np.lexsort(partial_keys(ip, x, ell, c))
    if len(order) == 0:
        return np.zeros(0, dtype=np.int64)
    cols = np.stack((ip, x.astype(np.int64), ell, c.astype(np.int64)))[:, order]
    change = np.zeros(len(order), dtype=np.int64)
    change[1:] = (cols[:, 1:] != cols[:, :-1]).any(axis=0)
    dense = np.empty(len(order), dtype=np.int64)
    dense[order] = np.cumsum(change)
    return dense


def build_metastring(store: ECMSStore) -> MetaString:
    m = len(store)
    offsets = store.head_offsets()
    dense = metacharacter_ranks(store)
    total = int(offsets[-1])
    doc_of_head = np.repeat(np.arange(m, dtype=np.int64), np.diff(offsets))
    head_pos = np.arange(total, dtype=np.int64) + doc_of_head
    symbols = np.empty(total + m, dtype=np.int64)
    symbols[head_pos] = dense + m
    symbols[offsets[1:] + np.arange(m)] = np.arange(m)
    alphabet = m + (int(dense.max()) + 1 if total else 0)
    return MetaString(symbols, alphabet, head_pos)


def sort_insert_heads(store: ECMSStore) -> HeadRanks:
    """Rank every insert-head suffix among all insert-head suffixes."""
    meta = build_metastring(store)
    sa = meta.suffix_array()
    head_of = np.full(len(meta.symbols), -1, dtype=np.int64)
    head_of[meta.head_positions] = np.arange(len(meta.head_positions))
    seq = head_of[sa]
    seq = seq[seq >= 0]
    rank = np.empty(len(seq), dtype=np.int64)
    rank[seq] = np.arange(len(seq))
    return HeadRanks(rank, store.head_offsets())


def _sstar_columns(store: ECMSStore, ref: ReferenceIndex, collection: Collection, sstar: np.ndarray):
    """Per S* suffix: doc, pos, ip, x, ell, c (global position order)."""
    pairs = collection.to_pairs(sstar)
    cols = {k: [] for k in ("d", "pos", "ip", "x", "ell", "c")}
    for d in range(collection.m):
        lo, hi = np.searchsorted(pairs[:, 0], [d, d + 1])
        pos = pairs[lo:hi, 1]
        _, _, ell, x, c, ip = expand_positions(store, d, pos, ref.isa)
        cols["d"].append(np.full(len(pos), d, dtype=np.int64))
        cols["pos"].append(pos)
        cols["ip"].append(ip)
        cols["x"].append(x)
        cols["ell"].append(ell)
        cols["c"].append(c)
    return {k: np.concatenate(v) for k, v in cols.items()}


def bucket_sstar(store: ECMSStore, ref: ReferenceIndex, collection) -> dict[int, list[tuple[int, int]]]:
    """S* suffixes grouped by insert point; each bucket in (doc, pos) order."""
    collection = _as_collection(collection)
    types = kernels.suffix_types(collection.text)
    cols = _sstar_columns(store, ref, collection, _sstar_positions(collection, types))
    buckets: dict[int, list[tuple[int, int]]] = {}
    for d, pos, ip in zip(cols["d"].tolist(), cols["pos"].tolist(), cols["ip"].tolist()):
        buckets.setdefault(ip, []).append((d, pos))
    return buckets


def _tiebreak(store: ECMSStore, ranks: HeadRanks, d, pos, ell, c) -> np.ndarray:
    """Rank of the tie-break head (see ``tiebreak_head``) of each suffix; the
    document id where the mismatch symbol is ``$`` (equal strings)."""
    out = np.asarray(d, dtype=np.int64).copy()
    for doc in np.unique(d):
        sel = np.flatnonzero((d == doc) & (c != DOC_END))
        if len(sel) == 0:
            continue
        j = store.docs[doc].j
        h = np.searchsorted(j, pos[sel], side="right")
        out[sel] = ranks.rank[ranks.offsets[doc] + h]
    return out


def _sort_sstar_arrays(store, ranks, cols) -> np.ndarray:
    tb = _tiebreak(store, ranks, cols["d"], cols["pos"], cols["ell"], cols["c"])
    keys = [tb] + partial_keys(cols["ip"], cols["x"], cols["ell"], cols["c"])
    return np.lexsort(keys)


def sort_sstar_buckets(store: ECMSStore, ref: ReferenceIndex, ranks: HeadRanks,
                       buckets: dict[int, list[tuple[int, int]]]) -> list[tuple[int, int]]:
    """Concatenate buckets by ascending insert point, each fully sorted."""
    out: list[tuple[int, int]] = []
    for ip in sorted(buckets):
        members = np.asarray(buckets[ip], dtype=np.int64).reshape(-1, 2)
        cols = {"d": members[:, 0], "pos": members[:, 1]}
        ell = np.empty(len(members), dtype=np.int64)
        x = np.empty(len(members), dtype=np.uint8)
        c = np.empty(len(members), dtype=np.uint8)
        ipcol = np.empty(len(members), dtype=np.int64)
        for doc in np.unique(cols["d"]):
            sel = cols["d"] == doc
            _, _, ell[sel], x[sel], c[sel], ipcol[sel] = expand_positions(store, doc, cols["pos"][sel], ref.isa)
        if (ipcol != ip).any():
            raise InvariantError(f"bucket {ip} holds suffixes with another insert point")
        cols.update(ip=ipcol, x=x, ell=ell, c=c)
        order = _sort_sstar_arrays(store, ranks, cols)
        out.extend(map(tuple, members[order].tolist()))
    return out


def induce_gsa(collection, sorted_sstar) -> np.ndarray:
    """Full GSA from the sorted S* suffixes (pairs or global positions)."""
    collection = _as_collection(collection)
    sstar = np.asarray(sorted_sstar, dtype=np.int64)
    if sstar.ndim == 2 or (sstar.ndim == 1 and len(sstar) == 0):
        sstar = collection.to_global(sstar) if sstar.size else np.zeros(0, dtype=np.int64)
    types = kernels.suffix_types(collection.text)
    return _induce(collection, types, sstar)


def _induce(collection: Collection, types: np.ndarray, sstar: np.ndarray) -> np.ndarray:
    terminators = collection.offsets[1:] - 1
    sa, status = kernels.induce(
        collection.text, types, collection.doc_start_mask(), sstar, terminators, 256
    )
    if status != kernels.INDUCE_OK or (sa < 0).any():
        raise InvariantError("induced sorting hit an occupied slot; S* order is wrong")
    if np.bincount(sa, minlength=collection.N).max() != 1:
        raise InvariantError("induced sorting produced duplicate positions")
    return collection.to_pairs(sa)


@dataclass
class BuildStats:
    N: int = 0
    m: int = 0
    sigma: int = 0
    ref_length: int = 0
    chi: int = 0
    chi_prime: int = 0
    sstar: int = 0
    lcp_sum: int = 0
    lcp_contractions: int = 0
    fast_contractions: int = 0
    timings: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items() if k != "timings"}
        out.update({f"time_{k}": round(v, 6) for k, v in self.timings.items()})
        return out


@dataclass(eq=False)
class GSAResult:
    gsa: np.ndarray
    stats: BuildStats
    ref: ReferenceIndex
    store: ECMSStore


def _encoded_reference(collection: Collection, reference) -> np.ndarray:
    if reference is None:
        return np.concatenate((collection.docs[0][:-1], [REF_END])).astype(np.uint8)
    if isinstance(reference, np.ndarray):
        return reference.astype(np.uint8)
    return encode_reference(reference)


def build_ecms(collection, reference=None, *, block_size: int = DEFAULT_BLOCK_SIZE,
               pred_sample: int = DEFAULT_PRED_SAMPLE, heuristic: bool = True,
               workers: int = 1, stats: BuildStats | None = None):
    """Phases 1 and 2: returns ``(collection, ref_index, store, stats)``."""
    collection = _as_collection(collection)
    stats = stats if stats is not None else BuildStats()
    t0 = time.perf_counter()
    ref = build_reference_index(_encoded_reference(collection, reference), collection.docs, block_size)
    t1 = time.perf_counter()
    if workers > 1 and collection.m > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            heads = list(pool.map(lambda d: compute_ecms(ref, d, heuristic), collection.docs))
    else:
        heads = [compute_ecms(ref, d, heuristic) for d in collection.docs]
    store = build_store(heads, pred_sample)
    t2 = time.perf_counter()

    syms = np.unique(collection.text)
    stats.N, stats.m = collection.N, collection.m
    stats.sigma = int((syms > DOC_END).sum())
    stats.ref_length = ref.n
    stats.lcp_sum = ref.lcp_sum
    stats.chi, stats.chi_prime = store.chi, store.chi_prime
    stats.lcp_contractions = sum(h.counters.lcp_contractions for h in heads)
    stats.fast_contractions = sum(h.counters.fast_contractions for h in heads)
    stats.timings["phase1_reference"] = t1 - t0
    stats.timings["phase2_ecms"] = t2 - t1
    return collection, ref, store, stats


def build_gsa(collection, reference=None, *, block_size: int = DEFAULT_BLOCK_SIZE,
              pred_sample: int = DEFAULT_PRED_SAMPLE, heuristic: bool = True,
              workers: int = 1) -> GSAResult:
    """GSA of ``collection`` (sequences or a :class:`Collection`).

    Without ``reference`` the first document serves as reference.
    """
    collection, ref, store, stats = build_ecms(
        collection, reference, block_size=block_size, pred_sample=pred_sample,
        heuristic=heuristic, workers=workers,
    )
    t0 = time.perf_counter()
    types = kernels.suffix_types(collection.text)
    sstar = _sstar_positions(collection, types)
    cols = _sstar_columns(store, ref, collection, sstar)
    t1 = time.perf_counter()
    ranks = sort_insert_heads(store)
    t2 = time.perf_counter()
    order = _sort_sstar_arrays(store, ranks, cols)
    sorted_sstar = collection.offsets[cols["d"][order]] + cols["pos"][order]
    t3 = time.perf_counter()
    gsa = _induce(collection, types, sorted_sstar)
    t4 = time.perf_counter()

    stats.sstar = len(sstar)
    stats.timings["phase3_bucket"] = t1 - t0
    stats.timings["phase4_heads"] = t2 - t1
    stats.timings["phase5_sstar"] = t3 - t2
    stats.timings["phase6_induce"] = t4 - t3
    return GSAResult(gsa, stats, ref, store)


__all__ = [
    "Collection", "GSAResult", "BuildStats", "MetaString",
    "compute_type_array", "bucket_sstar", "sort_insert_heads", "sort_sstar_buckets",
    "induce_gsa", "build_gsa", "build_ecms", "build_metastring", "metacharacter_ranks",
    "TYPE_L", "TYPE_S", "TYPE_S_STAR",
]
