"""Suffix array, LCP and smaller-value kernels over byte and integer texts.

Every array here is 0-based: ``sa[k]`` is the start of the k-th smallest
suffix, ``lcp[0] == 0``.
"""
from __future__ import annotations

import numpy as np

from ._backend import kernels
from .alphabet import InputFormatError, check_terminated


class InvariantError(RuntimeError):
    """An internal structure violates its defining property."""


def build_suffix_array_bytes(text: np.ndarray) -> np.ndarray:
    text = np.asarray(text, dtype=np.uint8)
    check_terminated(text)
    return kernels.sais(text.astype(np.int64), 256)


def build_suffix_array_ints(symbols, alphabet_size: int) -> np.ndarray:
    """Suffix array of an integer sequence under numeric order.

    The sequence must end with a sentinel that is unique and strictly
    smaller than every other symbol.
    """
    arr = np.asarray(symbols, dtype=np.int64)
    if arr.ndim != 1 or len(arr) == 0:
        raise InputFormatError("expected a non-empty 1-d sequence")
    if int(arr.min()) < 0 or int(arr.max()) >= alphabet_size:
        raise InputFormatError("symbol outside [0, alphabet_size)")
    body = arr[:-1]
    if len(body) and int(body.min()) <= int(arr[-1]):
        raise InputFormatError("sequence must end with a unique minimal sentinel")
    return kernels.sais(arr, int(alphabet_size))


def invert_permutation(sa: np.ndarray) -> np.ndarray:
    sa = np.asarray(sa, dtype=np.int64)
    n = len(sa)
    isa = np.full(n, -1, dtype=np.int64)
    if n and (sa.min() < 0 or sa.max() >= n):
        raise InvariantError("not a permutation of 0..n-1")
    isa[sa] = np.arange(n, dtype=np.int64)
    if (isa < 0).any():
        raise InvariantError("not a permutation of 0..n-1")
    return isa


def build_plcp(text: np.ndarray, sa: np.ndarray) -> np.ndarray:
    """Permuted LCP in text order, by the Phi method."""
    return kernels.phi_plcp(np.asarray(text, dtype=np.uint8), np.asarray(sa, dtype=np.int64))


def plcp_to_lcp(plcp: np.ndarray, sa: np.ndarray) -> np.ndarray:
    return np.asarray(plcp, dtype=np.int64)[np.asarray(sa, dtype=np.int64)]


class SmallerValueIndex:
    """Previous/next smaller value queries over an integer array.

    Both answers are precomputed with one stack pass each, so build is O(n)
    and a query is a single lookup.
    """

    def __init__(self, values):
        self.values = np.asarray(values, dtype=np.int64)
        self.psv_array, self.nsv_array = kernels.smaller_values(self.values)

    def __len__(self):
        return len(self.values)

    def _check(self, i):
        if not 0 <= i < len(self.values):
            raise IndexError(f"position {i} outside 0..{len(self.values) - 1}")

    def psv(self, i: int) -> int | None:
        self._check(i)
        r = int(self.psv_array[i])
        return None if r < 0 else r

    def nsv(self, i: int) -> int | None:
        self._check(i)
        r = int(self.nsv_array[i])
        return None if r >= len(self.values) else r

    def query(self, i: int, direction: str) -> int | None:
        if direction == "psv":
            return self.psv(i)
        if direction == "nsv":
            return self.nsv(i)
        raise ValueError(f"direction must be 'psv' or 'nsv', not {direction!r}")
