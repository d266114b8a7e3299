"""Shape checks shared by both kernel backends.

The compiled kernels run without bounds checks, so anything that could index
out of range is rejected here first.
"""
import numpy as np


def _in_range(a, n: int, what: str) -> None:
    a = np.asarray(a)
    if len(a) and (int(a.min()) < 0 or int(a.max()) >= n):
        raise ValueError(f"{what} holds values outside 0..{n - 1}")


def check_plcp(text, sa) -> None:
    if len(text) != len(sa) or len(text) == 0:
        raise ValueError(f"text and suffix array lengths differ ({len(text)} vs {len(sa)})")
    _in_range(sa, len(text), "suffix array")
    if int(np.asarray(text)[-1]) > 1 or (np.asarray(text)[:-1] <= np.asarray(text)[-1]).any():
        raise ValueError("text must end with a unique minimal terminator")


def check_ecms(ref_text, sa, isa, lcp, psv, nsv, block_max, block_size, doc) -> None:
    n = len(ref_text)
    if n == 0 or any(len(a) != n for a in (sa, isa, lcp, psv, nsv)):
        raise ValueError("reference arrays must all have the reference length")
    if block_size < 1 or len(block_max) != -(-n // block_size):
        raise ValueError("block_max does not match block_size")
    _in_range(sa, n, "suffix array")
    _in_range(isa, n, "inverse suffix array")
    if len(doc) == 0 or int(doc[-1]) != 1 or (np.asarray(doc)[:-1] <= 1).any():
        raise ValueError("document must end with its single terminator")


def check_induce(text, types, doc_start, sorted_sstar, terminators, alphabet_size) -> None:
    n = len(text)
    if len(types) != n or len(doc_start) != n:
        raise ValueError("types and doc_start must match the text length")
    if n and int(np.asarray(text).max()) >= alphabet_size:
        raise ValueError("symbol outside the alphabet")
    _in_range(sorted_sstar, n, "S* positions")
    _in_range(terminators, n, "terminator positions")


def check_sais(text, alphabet_size) -> None:
    t = np.asarray(text)
    if t.ndim != 1 or len(t) == 0:
        raise ValueError("expected a non-empty 1-d sequence")
    _in_range(t, alphabet_size, "text")
    if len(t) > 1 and int(t[:-1].min()) <= int(t[-1]):
        raise ValueError("sequence must end with a unique minimal sentinel")
