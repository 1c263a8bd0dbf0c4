# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel lane: DP passes over Z_p^n state tables and the
orientation backtracking search.  Semantics match zpflow._kernels_py exactly;
equivalence is covered by tests.

All modular arithmetic keeps operands non-negative (cdivision is C-style)."""

from libc.string cimport memcpy

import numpy as np

BACKEND = "compiled"


cdef void _roll_u8(unsigned char[::1] src, unsigned char[::1] dst,
                   Py_ssize_t size, Py_ssize_t stride, int p, long shift):
    """Translate one coordinate: dst digit (d + shift) mod p <- src digit d.

    Digits d < p - shift land contiguously at the block tail and the rest wrap
    to the head, so the whole roll is two memcpy runs per block."""
    cdef Py_ssize_t block = stride * p
    cdef Py_ssize_t head = shift * stride
    cdef Py_ssize_t tail = block - head
    cdef Py_ssize_t base
    for base in range(0, size, block):
        memcpy(&dst[base + head], &src[base], tail)
        memcpy(&dst[base], &src[base + tail], head)


cdef void _roll_i32(int[::1] src, int[::1] dst,
                    Py_ssize_t size, Py_ssize_t stride, int p, long shift):
    cdef Py_ssize_t block = stride * p
    cdef Py_ssize_t head = shift * stride
    cdef Py_ssize_t tail = block - head
    cdef Py_ssize_t base
    for base in range(0, size, block):
        memcpy(&dst[base + head], &src[base], tail * sizeof(int))
        memcpy(&dst[base], &src[base + tail], head * sizeof(int))


def or_shift(table, digits, int p):
    """Reachability pass: out[s] = table[s] | table[s - v].

    The translation by v factors into one roll per coordinate (group action),
    each a sweep of contiguous block copies."""
    cdef unsigned char[::1] src = table
    cdef Py_ssize_t size = src.shape[0]
    cdef int n = len(digits)
    cdef long[::1] add = np.asarray(digits, dtype=np.int64) % p
    cur_arr = np.asarray(table).copy()
    scratch_arr = np.empty_like(cur_arr)
    cdef unsigned char[::1] cur = cur_arr
    cdef unsigned char[::1] scratch = scratch_arr
    cdef Py_ssize_t stride = 1
    cdef int i
    cdef Py_ssize_t s
    for i in range(n - 1, -1, -1):
        if add[i]:
            _roll_u8(cur, scratch, size, stride, p, add[i])
            cur, scratch = scratch, cur
            cur_arr, scratch_arr = scratch_arr, cur_arr
        stride *= p
    np.bitwise_or(np.asarray(table), cur_arr, out=cur_arr)
    return cur_arr


def min_shift1(dist, digits, int p):
    """Min-cardinality pass: out[s] = min(dist[s], dist[s - v] + 1)."""
    cdef int[::1] src = dist
    cdef Py_ssize_t size = src.shape[0]
    cdef int n = len(digits)
    cdef long[::1] add = np.asarray(digits, dtype=np.int64) % p
    cur_arr = np.asarray(dist).copy()
    scratch_arr = np.empty_like(cur_arr)
    cdef int[::1] cur = cur_arr
    cdef int[::1] scratch = scratch_arr
    cdef Py_ssize_t stride = 1
    cdef int i
    cdef Py_ssize_t s
    cdef int cand
    for i in range(n - 1, -1, -1):
        if add[i]:
            _roll_i32(cur, scratch, size, stride, p, add[i])
            cur, scratch = scratch, cur
            cur_arr, scratch_arr = scratch_arr, cur_arr
        stride *= p
    cur_arr += 1
    np.minimum(np.asarray(dist), cur_arr, out=cur_arr)
    return cur_arr


def orientation_search(int k, tails, heads, ws, beta, order):
    """Iterative twin of the python-lane search; requires k <= 63 (uint64 masks).

    ``beta`` and ``ws`` must arrive normalized to [0, k); weights non-zero.
    """
    cdef int m = len(order)
    cdef int nv = len(beta)
    cdef int me = len(tails)
    if k > 63:
        raise ValueError("compiled orientation kernel supports k <= 63")
    cdef long[::1] tl = np.asarray(tails, dtype=np.int64)
    cdef long[::1] hd = np.asarray(heads, dtype=np.int64)
    cdef long[::1] wt = np.asarray(ws, dtype=np.int64)
    cdef long[::1] bt = np.asarray(beta, dtype=np.int64)
    cdef long[::1] od = np.asarray(order, dtype=np.int64)
    cdef unsigned long long full = ((<unsigned long long>1) << k) - 1
    reach_arr = np.zeros((m + 1, nv), dtype=np.uint64)
    cdef unsigned long long[:, ::1] reach = reach_arr
    cdef Py_ssize_t t, j
    cdef long e, u, hv, w, du
    cdef unsigned long long mask, up, dn
    for j in range(nv):
        reach[m, j] = 1
    for t in range(m - 1, -1, -1):
        e = od[t]
        for j in range(nv):
            reach[t, j] = reach[t + 1, j]
        w = wt[e]
        for j in range(2):
            u = tl[e] if j == 0 else hd[e]
            mask = reach[t + 1, u]
            up = ((mask << w) | (mask >> (k - w))) & full
            dn = ((mask << (k - w)) | (mask >> w)) & full
            reach[t, u] = up | dn
    for j in range(nv):
        if not (reach[0, j] >> bt[j]) & 1:
            return None

    partial_arr = np.zeros(nv, dtype=np.int64)
    cdef long[::1] partial = partial_arr
    choices_arr = np.zeros(me, dtype=np.int64)
    cdef long[::1] choices = choices_arr
    attempt_arr = np.zeros(m, dtype=np.int64)
    cdef long[::1] attempt = attempt_arr
    cdef Py_ssize_t pos = 0
    cdef long a, c, needu, needv
    while True:
        if pos == m:
            return [int(choices[j]) for j in range(me)]
        e = od[pos]
        a = attempt[pos]
        if a == 2:
            attempt[pos] = 0
            pos -= 1
            if pos < 0:
                return None
            # undo the decision taken at the previous position
            e = od[pos]
            u = tl[e]
            hv = hd[e]
            w = wt[e]
            c = choices[e]
            du = w if c == 0 else k - w
            partial[u] = (partial[u] + k - du) % k
            partial[hv] = (partial[hv] + du) % k
            continue
        attempt[pos] = a + 1
        c = a
        u = tl[e]
        hv = hd[e]
        w = wt[e]
        du = w if c == 0 else k - w
        partial[u] = (partial[u] + du) % k
        partial[hv] = (partial[hv] + k - du) % k
        needu = (bt[u] + k - partial[u]) % k
        needv = (bt[hv] + k - partial[hv]) % k
        if ((reach[pos + 1, u] >> needu) & 1) and ((reach[pos + 1, hv] >> needv) & 1):
            choices[e] = c
            pos += 1
        else:
            partial[u] = (partial[u] + k - du) % k
            partial[hv] = (partial[hv] + du) % k
