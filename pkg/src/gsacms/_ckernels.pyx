# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels. Same signatures and results as ``_pykernels``."""
import numpy as np

from ._kernel_args import check_ecms, check_induce, check_plcp, check_sais

cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()

NAME = "cython"

cdef enum:
    _OK = 0
    _COLLISION = 1

INDUCE_OK = _OK
INDUCE_COLLISION = _COLLISION


cdef void _buckets(const int64_t[::1] T, int64_t K,
                   int64_t[::1] starts, int64_t[::1] ends) noexcept nogil:
    cdef Py_ssize_t n = T.shape[0], i
    cdef int64_t k, total = 0
    for k in range(K):
        ends[k] = 0
    for i in range(n):
        ends[T[i]] += 1
    for k in range(K):
        starts[k] = total
        total += ends[k]
        ends[k] = total


cdef void _induce(const int64_t[::1] T, int64_t[::1] SA, const uint8_t[::1] stype,
                  const int64_t[::1] starts, const int64_t[::1] ends,
                  int64_t[::1] ptr) noexcept nogil:
    cdef Py_ssize_t n = T.shape[0], i, K = starts.shape[0], k
    cdef int64_t j, ch
    for k in range(K):
        ptr[k] = starts[k]
    for i in range(n):
        j = SA[i] - 1
        if j >= 0 and not stype[j]:
            ch = T[j]
            SA[ptr[ch]] = j
            ptr[ch] += 1
    for k in range(K):
        ptr[k] = ends[k]
    for i in range(n - 1, -1, -1):
        j = SA[i] - 1
        if j >= 0 and stype[j]:
            ch = T[j]
            ptr[ch] -= 1
            SA[ptr[ch]] = j


cdef bint _lms_equal(const int64_t[::1] T, const uint8_t[::1] stype,
                     const uint8_t[::1] lms, int64_t a, int64_t b) noexcept nogil:
    cdef int64_t n = T.shape[0], i = 0
    if a == n - 1 or b == n - 1:
        return False
    while True:
        if T[a + i] != T[b + i] or stype[a + i] != stype[b + i]:
            return False
        if i > 0 and lms[a + i]:
            return lms[b + i] != 0
        i += 1


cdef cnp.ndarray _sais(const int64_t[::1] T, int64_t K):
    cdef Py_ssize_t n = T.shape[0], i, k
    cdef cnp.ndarray out
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    if n == 2:
        return np.array([1, 0], dtype=np.int64)

    cdef cnp.ndarray stype_a = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray lms_a = np.zeros(n, dtype=np.uint8)
    cdef uint8_t[::1] stype = stype_a
    cdef uint8_t[::1] lms = lms_a
    cdef cnp.ndarray starts_a = np.empty(K, dtype=np.int64)
    cdef cnp.ndarray ends_a = np.empty(K, dtype=np.int64)
    cdef cnp.ndarray ptr_a = np.empty(K, dtype=np.int64)
    cdef int64_t[::1] starts = starts_a
    cdef int64_t[::1] ends = ends_a
    cdef int64_t[::1] ptr = ptr_a
    out = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] SA = out
    cdef int64_t ch, p, prev, name, n_lms = 0

    with nogil:
        stype[n - 1] = 1
        for i in range(n - 2, -1, -1):
            if T[i] < T[i + 1] or (T[i] == T[i + 1] and stype[i + 1]):
                stype[i] = 1
        for i in range(1, n):
            if stype[i] and not stype[i - 1]:
                lms[i] = 1
                n_lms += 1
        _buckets(T, K, starts, ends)
        for k in range(K):
            ptr[k] = ends[k]
        for i in range(1, n):
            if lms[i]:
                ch = T[i]
                ptr[ch] -= 1
                SA[ptr[ch]] = i
        _induce(T, SA, stype, starts, ends, ptr)

    cdef cnp.ndarray names_a = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] names = names_a
    cdef cnp.ndarray lms_pos_a = np.empty(n_lms, dtype=np.int64)
    cdef int64_t[::1] lms_pos = lms_pos_a
    cdef cnp.ndarray reduced_a = np.empty(n_lms, dtype=np.int64)
    cdef int64_t[::1] reduced = reduced_a
    with nogil:
        name = -1
        prev = -1
        for i in range(n):
            p = SA[i]
            if not lms[p]:
                continue
            if prev < 0 or not _lms_equal(T, stype, lms, prev, p):
                name += 1
            names[p] = name
            prev = p
        k = 0
        for i in range(1, n):
            if lms[i]:
                lms_pos[k] = i
                reduced[k] = names[i]
                k += 1

    cdef cnp.ndarray rsa_a
    cdef int64_t[::1] rsa
    if name + 1 < n_lms:
        rsa_a = _sais(reduced, name + 1)
        rsa = rsa_a
    else:
        rsa_a = np.empty(n_lms, dtype=np.int64)
        rsa = rsa_a
        for k in range(n_lms):
            rsa[reduced[k]] = k

    with nogil:
        for i in range(n):
            SA[i] = -1
        for k in range(K):
            ptr[k] = ends[k]
        for k in range(n_lms - 1, -1, -1):
            p = lms_pos[rsa[k]]
            ch = T[p]
            ptr[ch] -= 1
            SA[ptr[ch]] = p
        _induce(T, SA, stype, starts, ends, ptr)
    return out


def sais(text, alphabet_size):
    """Suffix array of an integer sequence ending in a unique minimal symbol."""
    check_sais(text, alphabet_size)
    t = np.ascontiguousarray(text, dtype=np.int64)
    return _sais(t, int(alphabet_size))


def phi_plcp(text, sa):
    check_plcp(text, sa)
    cdef const uint8_t[::1] T = np.ascontiguousarray(text, dtype=np.uint8)
    cdef const int64_t[::1] S = np.ascontiguousarray(sa, dtype=np.int64)
    cdef Py_ssize_t n = T.shape[0], i
    phi_a = np.empty(n, dtype=np.int64)
    plcp_a = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] phi = phi_a
    cdef int64_t[::1] plcp = plcp_a
    cdef int64_t h = 0, j
    with nogil:
        phi[S[0]] = -1
        for i in range(1, n):
            phi[S[i]] = S[i - 1]
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
    return plcp_a


def smaller_values(values):
    """PSV/NSV arrays; -1 and len(values) mark "none"."""
    cdef const int64_t[::1] A = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t n = A.shape[0], i
    psv_a = np.full(n, -1, dtype=np.int64)
    nsv_a = np.full(n, n, dtype=np.int64)
    stack_a = np.empty(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] psv = psv_a
    cdef int64_t[::1] nsv = nsv_a
    cdef int64_t[::1] stack = stack_a
    cdef Py_ssize_t top
    cdef int64_t a
    with nogil:
        top = 0
        for i in range(n):
            a = A[i]
            while top > 0 and A[stack[top - 1]] >= a:
                top -= 1
            if top > 0:
                psv[i] = stack[top - 1]
            stack[top] = i
            top += 1
        top = 0
        for i in range(n - 1, -1, -1):
            a = A[i]
            while top > 0 and A[stack[top - 1]] >= a:
                top -= 1
            if top > 0:
                nsv[i] = stack[top - 1]
            stack[top] = i
            top += 1
    return psv_a, nsv_a


def ecms(ref_text, sa, isa, lcp, psv, nsv, block_max, block_size, doc, heuristic):
    """Stream the insert-heads of ``doc`` against the reference.

    Returns ``(j, ip, q, ell, x, c, counters)`` where ``counters`` is
    ``(heads, lcp_contractions, fast_contractions)``.
    """
    check_ecms(ref_text, sa, isa, lcp, psv, nsv, block_max, block_size, doc)
    cdef const uint8_t[::1] R = np.ascontiguousarray(ref_text, dtype=np.uint8)
    cdef const int64_t[::1] SA = np.ascontiguousarray(sa, dtype=np.int64)
    cdef const int64_t[::1] ISA = np.ascontiguousarray(isa, dtype=np.int64)
    cdef const int64_t[::1] LCP = np.ascontiguousarray(lcp, dtype=np.int64)
    cdef const int64_t[::1] PSV = np.ascontiguousarray(psv, dtype=np.int64)
    cdef const int64_t[::1] NSV = np.ascontiguousarray(nsv, dtype=np.int64)
    cdef const int64_t[::1] BMAX = np.ascontiguousarray(block_max, dtype=np.int64)
    cdef const uint8_t[::1] S = np.ascontiguousarray(doc, dtype=np.uint8)
    cdef int64_t b = block_size
    cdef bint heur = bool(heuristic)
    cdef Py_ssize_t n = R.shape[0], m = S.shape[0], i

    oj = np.empty(m, dtype=np.int64)
    oip = np.empty(m, dtype=np.int64)
    oq = np.empty(m, dtype=np.int64)
    oell = np.empty(m, dtype=np.int64)
    ox = np.empty(m, dtype=np.uint8)
    oc = np.empty(m, dtype=np.uint8)
    cdef int64_t[::1] out_j = oj
    cdef int64_t[::1] out_ip = oip
    cdef int64_t[::1] out_q = oq
    cdef int64_t[::1] out_ell = oell
    cdef uint8_t[::1] out_x = ox
    cdef uint8_t[::1] out_c = oc

    cdef int64_t s = 0, e = n - 1, L = 0, lo, hi, lo2, mid, gap = 0, ip, q, r, y, k, new_s
    cdef int64_t prev_q = -2, prev_L = 0, count = 0
    cdef int64_t heads = 0, lcp_contractions = 0, fast = 0
    cdef uint8_t ch = 0, rc, x

    with nogil:
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
                lo = s
                hi = e + 1
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
                    s = lo
                    e = lo2 - 1
                    L += 1
                    continue
                gap = lo
                break

            if gap > s:
                ip = gap - 1
                x = 1
            else:
                ip = s
                x = 0
            q = SA[ip]
            if i == 0 or L > prev_L - 1:
                heads += 1
            if i == 0 or q != prev_q + 1:
                out_j[count] = i
                out_ip[count] = ip
                out_q[count] = q
                out_ell[count] = L
                out_x[count] = x
                out_c[count] = ch
                count += 1
            prev_q = q
            prev_L = L

            if L == 0:
                continue
            if heur and s == e and L >= 2:
                r = ISA[SA[s] + 1]
                y = L - 1
                if y > BMAX[r // b] and (r + 1 >= n or y > BMAX[(r + 1) // b]):
                    s = r
                    e = r
                    L = y
                    fast += 1
                    continue
            if L == 1:
                s = 0
                e = n - 1
                L = 0
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
            s = new_s
            e = k - 1
            L = y

    return (oj[:count].copy(), oip[:count].copy(), oq[:count].copy(),
            oell[:count].copy(), ox[:count].copy(), oc[:count].copy(),
            (heads, lcp_contractions, fast))


def suffix_types(text):
    """0 = L, 1 = S over a concatenation of ``$``-terminated documents."""
    cdef const uint8_t[::1] T = np.ascontiguousarray(text, dtype=np.uint8)
    cdef Py_ssize_t N = T.shape[0], p
    out = np.zeros(N, dtype=np.uint8)
    if N == 0:
        return out
    cdef uint8_t[::1] t = out
    cdef uint8_t a, nxt
    with nogil:
        t[N - 1] = 1
        for p in range(N - 2, -1, -1):
            a = T[p]
            if a == 1:
                t[p] = 1
            else:
                nxt = T[p + 1]
                if a < nxt or (a == nxt and t[p + 1]):
                    t[p] = 1
    return out


def induce(text, types, doc_start, sorted_sstar, terminators, alphabet_size):
    """Induce a generalized suffix array of global positions.

    Returns ``(sa, status)``; status is ``INDUCE_COLLISION`` when an L-slot
    was already occupied.
    """
    check_induce(text, types, doc_start, sorted_sstar, terminators, alphabet_size)
    cdef const uint8_t[::1] T = np.ascontiguousarray(text, dtype=np.uint8)
    cdef const uint8_t[::1] t = np.ascontiguousarray(types, dtype=np.uint8)
    cdef const uint8_t[::1] first = np.ascontiguousarray(doc_start, dtype=np.uint8)
    cdef const int64_t[::1] sstar = np.ascontiguousarray(sorted_sstar, dtype=np.int64)
    cdef const int64_t[::1] term = np.ascontiguousarray(terminators, dtype=np.int64)
    cdef Py_ssize_t N = T.shape[0], K = alphabet_size, i, k
    sa_a = np.full(N, -1, dtype=np.int64)
    cdef int64_t[::1] SA = sa_a
    starts_a = np.zeros(K, dtype=np.int64)
    ends_a = np.zeros(K, dtype=np.int64)
    ptr_a = np.zeros(K, dtype=np.int64)
    cdef int64_t[::1] starts = starts_a
    cdef int64_t[::1] ends = ends_a
    cdef int64_t[::1] ptr = ptr_a
    cdef int64_t total = 0, p, j, slot
    cdef uint8_t ch
    cdef int status = _OK
    with nogil:
        for i in range(N):
            ends[T[i]] += 1
        for k in range(K):
            starts[k] = total
            total += ends[k]
            ends[k] = total
        for k in range(K):
            ptr[k] = ends[k]
        for i in range(sstar.shape[0] - 1, -1, -1):
            p = sstar[i]
            ch = T[p]
            ptr[ch] -= 1
            SA[ptr[ch]] = p
        for i in range(term.shape[0]):
            p = term[i]
            SA[starts[T[p]] + i] = p

        for k in range(K):
            ptr[k] = starts[k]
        for i in range(N):
            p = SA[i]
            if p <= 0 or first[p]:
                continue
            j = p - 1
            if not t[j]:
                ch = T[j]
                slot = ptr[ch]
                if SA[slot] != -1:
                    status = _COLLISION
                    break
                SA[slot] = j
                ptr[ch] = slot + 1
        if status == _OK:
            for k in range(K):
                ptr[k] = ends[k]
            for i in range(N - 1, -1, -1):
                p = SA[i]
                if p <= 0 or first[p]:
                    continue
                j = p - 1
                if t[j]:
                    ch = T[j]
                    ptr[ch] -= 1
                    SA[ptr[ch]] = j
    return sa_a, status
