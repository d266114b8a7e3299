"""Pure-Python hot kernels. Mirrors ``_ckernels.pyx`` function for function.

All positions and rows are 0-based. Inputs are numpy arrays; loops run over
plain lists because per-element numpy indexing is slower in CPython.
"""
import numpy as np

from ._kernel_args import check_ecms, check_induce, check_plcp, check_sais

NAME = "python"

# Error codes shared with the compiled module.
INDUCE_OK = 0
INDUCE_COLLISION = 1


def sais(text, alphabet_size):
    """Suffix array of an integer sequence ending in a unique minimal symbol."""
    check_sais(text, alphabet_size)
    t = [int(v) for v in text]
    return np.asarray(_sais(t, int(alphabet_size)), dtype=np.int64)


def _buckets(T, K):
    counts = [0] * K
    for ch in T:
        counts[ch] += 1
    starts = [0] * K
    ends = [0] * K
    total = 0
    for k in range(K):
        starts[k] = total
        total += counts[k]
        ends[k] = total
    return starts, ends


def _induce(T, SA, stype, starts, ends):
    n = len(T)
    heads = starts[:]
    for i in range(n):
        j = SA[i] - 1
        if j >= 0 and not stype[j]:
            ch = T[j]
            SA[heads[ch]] = j
            heads[ch] += 1
    tails = ends[:]
    for i in range(n - 1, -1, -1):
        j = SA[i] - 1
        if j >= 0 and stype[j]:
            ch = T[j]
            tails[ch] -= 1
            SA[tails[ch]] = j


def _sais(T, K):
    n = len(T)
    if n == 1:
        return [0]
    if n == 2:
        return [1, 0]
    stype = bytearray(n)
    stype[n - 1] = 1
    for i in range(n - 2, -1, -1):
        if T[i] < T[i + 1] or (T[i] == T[i + 1] and stype[i + 1]):
            stype[i] = 1
    lms = bytearray(n)
    for i in range(1, n):
        if stype[i] and not stype[i - 1]:
            lms[i] = 1

    starts, ends = _buckets(T, K)
    SA = [-1] * n
    tails = ends[:]
    for i in range(1, n):
        if lms[i]:
            ch = T[i]
            tails[ch] -= 1
            SA[tails[ch]] = i
    _induce(T, SA, stype, starts, ends)

    names = [-1] * n
    name = -1
    prev = -1
    for p in SA:
        if not lms[p]:
            continue
        if prev < 0 or not _lms_equal(T, stype, lms, prev, p):
            name += 1
        names[p] = name
        prev = p

    lms_pos = [i for i in range(1, n) if lms[i]]
    reduced = [names[p] for p in lms_pos]
    if name + 1 < len(reduced):
        reduced_sa = _sais(reduced, name + 1)
    else:
        reduced_sa = [0] * len(reduced)
        for k, v in enumerate(reduced):
            reduced_sa[v] = k

    SA = [-1] * n
    tails = ends[:]
    for k in range(len(reduced_sa) - 1, -1, -1):
        p = lms_pos[reduced_sa[k]]
        ch = T[p]
        tails[ch] -= 1
        SA[tails[ch]] = p
    _induce(T, SA, stype, starts, ends)
    return SA


def _lms_equal(T, stype, lms, a, b):
    n = len(T)
    if a == n - 1 or b == n - 1:
        return False
    i = 0
    while True:
        if T[a + i] != T[b + i] or stype[a + i] != stype[b + i]:
            return False
        if i > 0 and lms[a + i]:
            return bool(lms[b + i])
        i += 1


def phi_plcp(text, sa):
    check_plcp(text, sa)
    T = text.tolist()
    S = sa.tolist()
    n = len(T)
    phi = [0] * n
    phi[S[0]] = -1
    for i in range(1, n):
        phi[S[i]] = S[i - 1]
    plcp = [0] * n
    h = 0
    for i in range(n):
        j = phi[i]
        if j < 0:
            h = 0
            continue
        while T[i + h] == T[j + h]:
            h += 1
        plcp[i] = h
        if h > 0:
            h -= 1
    return np.asarray(plcp, dtype=np.int64)


def smaller_values(values):
    """PSV/NSV arrays; -1 and len(values) mark "none"."""
    A = values.tolist()
    n = len(A)
    psv = [-1] * n
    nsv = [n] * n
    stack = []
    for i in range(n):
        a = A[i]
        while stack and A[stack[-1]] >= a:
            stack.pop()
        if stack:
            psv[i] = stack[-1]
        stack.append(i)
    stack = []
    for i in range(n - 1, -1, -1):
        a = A[i]
        while stack and A[stack[-1]] >= a:
            stack.pop()
        if stack:
            nsv[i] = stack[-1]
        stack.append(i)
    return np.asarray(psv, dtype=np.int64), np.asarray(nsv, dtype=np.int64)


def ecms(ref_text, sa, isa, lcp, psv, nsv, block_max, block_size, doc, heuristic):
    """Stream the insert-heads of ``doc`` against the reference.

    Returns ``(j, ip, q, ell, x, c, counters)`` where ``counters`` is
    ``(heads, lcp_contractions, fast_contractions)``.
    """
    check_ecms(ref_text, sa, isa, lcp, psv, nsv, block_max, block_size, doc)
    R = ref_text.tolist()
    SA = sa.tolist()
    ISA = isa.tolist()
    LCP = lcp.tolist()
    PSV = psv.tolist()
    NSV = nsv.tolist()
    BMAX = block_max.tolist()
    S = doc.tolist()
    b = int(block_size)
    n = len(R)
    m = len(S)
    out_j, out_ip, out_q, out_ell, out_x, out_c = [], [], [], [], [], []
    heads = 0
    lcp_contractions = 0
    fast = 0

    s, e, L = 0, n - 1, 0
    prev_q = -2
    prev_L = 0
    for i in range(m):
        while True:
            ch = S[i + L]
            if s == e:
                rc = R[SA[s] + L]
                if rc == ch:
                    L += 1
                    continue
                gap = s + 1 if rc < ch else s
                break
            lo, hi = s, e + 1
            while lo < hi:
                mid = (lo + hi) >> 1
                if R[SA[mid] + L] < ch:
                    lo = mid + 1
                else:
                    hi = mid
            if lo <= e and R[SA[lo] + L] == ch:
                hi = e + 1
                lo2 = lo
                while lo2 < hi:
                    mid = (lo2 + hi) >> 1
                    if R[SA[mid] + L] <= ch:
                        lo2 = mid + 1
                    else:
                        hi = mid
                s, e = lo, lo2 - 1
                L += 1
                continue
            gap = lo
            break

        if gap > s:
            ip, x = gap - 1, 1
        else:
            ip, x = s, 0
        q = SA[ip]
        if i == 0 or L > prev_L - 1:
            heads += 1
        if i == 0 or q != prev_q + 1:
            out_j.append(i)
            out_ip.append(ip)
            out_q.append(q)
            out_ell.append(L)
            out_x.append(x)
            out_c.append(ch)
        prev_q = q
        prev_L = L

        if L == 0:
            continue
        if heuristic and s == e and L >= 2:
            r = ISA[SA[s] + 1]
            y = L - 1
            if y > BMAX[r // b] and (r + 1 >= n or y > BMAX[(r + 1) // b]):
                s = e = r
                L = y
                fast += 1
                continue
        if L == 1:
            s, e, L = 0, n - 1, 0
            continue
        lcp_contractions += 1
        y = L - 1
        k = ISA[SA[s] + 1]
        while LCP[k] >= y:
            k = PSV[k]
        new_s = k
        k = ISA[SA[e] + 1] + 1
        while k < n and LCP[k] >= y:
            k = NSV[k]
        s, e, L = new_s, k - 1, y

    i64 = np.int64
    return (
        np.asarray(out_j, dtype=i64),
        np.asarray(out_ip, dtype=i64),
        np.asarray(out_q, dtype=i64),
        np.asarray(out_ell, dtype=i64),
        np.asarray(out_x, dtype=np.uint8),
        np.asarray(out_c, dtype=np.uint8),
        (heads, lcp_contractions, fast),
    )


def suffix_types(text):
    """0 = L, 1 = S over a concatenation of ``$``-terminated documents."""
    T = text.tolist()
    N = len(T)
    t = bytearray(N)
    if N == 0:
        return np.zeros(0, dtype=np.uint8)
    t[N - 1] = 1
    for p in range(N - 2, -1, -1):
        a = T[p]
        if a == 1:
            t[p] = 1
        else:
            nxt = T[p + 1]
            if a < nxt or (a == nxt and t[p + 1]):
                t[p] = 1
    return np.frombuffer(bytes(t), dtype=np.uint8).copy()


def induce(text, types, doc_start, sorted_sstar, terminators, alphabet_size):
    """Induce a generalized suffix array of global positions.

    Returns ``(sa, status)``; status is ``INDUCE_COLLISION`` when an L-slot
    was already occupied.
    """
    check_induce(text, types, doc_start, sorted_sstar, terminators, alphabet_size)
    T = text.tolist()
    t = types.tolist()
    first = doc_start.tolist()
    N = len(T)
    starts, ends = _buckets(T, int(alphabet_size))
    SA = [-1] * N
    tails = ends[:]
    for p in reversed(sorted_sstar.tolist()):
        ch = T[p]
        tails[ch] -= 1
        SA[tails[ch]] = p
    for k, p in enumerate(terminators.tolist()):
        SA[starts[T[p]] + k] = p

    heads = starts[:]
    for i in range(N):
        p = SA[i]
        if p <= 0 or first[p]:
            continue
        j = p - 1
        if not t[j]:
            ch = T[j]
            slot = heads[ch]
            if SA[slot] != -1:
                return np.asarray(SA, dtype=np.int64), INDUCE_COLLISION
            SA[slot] = j
            heads[ch] = slot + 1
    tails = ends[:]
    for i in range(N - 1, -1, -1):
        p = SA[i]
        if p <= 0 or first[p]:
            continue
        j = p - 1
        if t[j]:
            ch = T[j]
            tails[ch] -= 1
            SA[tails[ch]] = j
    return np.asarray(SA, dtype=np.int64), INDUCE_OK
