"""Brute-force references. Deliberately quadratic; keep inputs to a few kB.

Nothing here touches the kernels: texts are compared as ``bytes`` slices.
"""
from __future__ import annotations

import numpy as np


def _raw(text) -> bytes:
    return np.asarray(text, dtype=np.uint8).tobytes()


def naive_suffix_array(text) -> list[int]:
    t = _raw(text)
    return sorted(range(len(t)), key=lambda i: t[i:])


def naive_lcp(text, sa) -> list[int]:
    t = _raw(text)
    out = [0] * len(sa)
    for k in range(1, len(sa)):
        a, b = t[sa[k - 1]:], t[sa[k]:]
        h = 0
        while h < min(len(a), len(b)) and a[h] == b[h]:
            h += 1
        out[k] = h
    return out


def naive_gsa(docs) -> list[tuple[int, int]]:
    """All suffixes of ``$``-terminated docs, sorted; ties by document index."""
    raws = [_raw(d) for d in docs]
    keys = [(r[i:], d, i) for d, r in enumerate(raws) for i in range(len(r))]
    keys.sort()
    return [(d, i) for _, d, i in keys]


def naive_ms(ref, doc) -> list[tuple[int, int]]:
    """``(p, ell)`` per position; ``p`` is the leftmost occurrence, -1 if ell=0."""
    r, s = _raw(ref), _raw(doc)
    out = []
    for i in range(len(s)):
        ell = _match_len(r, s, i)
        out.append((r.find(s[i:i + ell]) if ell else -1, ell))
    return out


def _match_len(r: bytes, s: bytes, i: int) -> int:
    # substring occurrence is monotone in length, so bisect on it
    lo, hi = 0, len(s) - i
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if s[i:i + mid] in r:
            lo = mid
        else:
            hi = mid - 1
    return lo


def naive_insert_point(ref, doc, i: int) -> tuple[int, str]:
    """(ip, x) for position ``i`` by the three-case definition over all rows."""
    r, s = _raw(ref), _raw(doc)
    sa = naive_suffix_array(ref)
    ell = _match_len(r, s, i)
    if ell == 0:
        ip = 0
    else:
        u, uc = s[i:i + ell], s[i:i + ell + 1]
        occ = [k for k, p in enumerate(sa) if r[p:p + ell] == u]
        below = [k for k in occ if r[sa[k]:] < uc]
        ip = max(below) if below else min(occ)
    x = "L" if r[sa[ip]:] < s[i:] else "S"
    return ip, x


def naive_types(doc) -> list[str]:
    s = _raw(doc)
    t = ["S" if s[i:] < s[i + 1:] or i == len(s) - 1 else "L" for i in range(len(s))]
    return [
        "S*" if 0 < k < len(s) - 1 and t[k] == "S" and t[k - 1] == "L" else t[k]
        for k in range(len(s))
    ]
