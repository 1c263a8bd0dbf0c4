"""Numpy/python kernel lane.

Mirrors the compiled extension ``zpflow._ck``: single DP passes over the state
space of Z_p^n (flattened C-order, first coordinate most significant) and the
backtracking orientation search.  Which lane actually runs is decided in
``zpflow._kernels``.
"""

from __future__ import annotations

import sys

import numpy as np

BACKEND = "python"


def _shifted(arr: np.ndarray, digits, p: int) -> np.ndarray:
    """View of ``arr`` shifted by the group element ``digits``: out[s] = arr[s - v]."""
    n = len(digits)
    out = arr.reshape((p,) * n)
    for axis, d in enumerate(digits):
        if d % p:
            out = np.roll(out, d % p, axis=axis)
    return out.reshape(-1)


def or_shift(table: np.ndarray, digits, p: int) -> np.ndarray:
    """Reachability pass: out[s] = table[s] | table[s - v]."""
    return table | _shifted(table, digits, p)


def min_shift1(dist: np.ndarray, digits, p: int) -> np.ndarray:
    """Min-cardinality pass: out[s] = min(dist[s], dist[s - v] + 1)."""
    return np.minimum(dist, _shifted(dist, digits, p) + 1)


def orientation_search(k: int, tails, heads, ws, beta, order):
    """Exhaustive orientation search with per-vertex residual reachability pruning.

    Edges are decided in ``order``; choice 0 keeps the stored (tail -> head)
    direction, contributing +w to the tail and -w to the head boundary.  For
    every vertex and position the set of residual sums achievable from the not
    yet decided incident edges is precomputed as a bitmask, which makes the
    prune an O(1) lookup.  Returns the per-edge choice list or None.
    """
    m = len(order)
    nv = len(beta)
    full = (1 << k) - 1

    def rot(mask: int, w: int) -> int:
        w %= k
        if w == 0:
            return mask
        return ((mask << w) | (mask >> (k - w))) & full

    # reach[t][v] = bitmask of sums achievable at v using edges order[t:]
    reach = [None] * (m + 1)
    reach[m] = [1] * nv
    for t in range(m - 1, -1, -1):
        e = order[t]
        u, v, w = tails[e], heads[e], ws[e]
        row = list(reach[t + 1])
        row[u] = rot(row[u], w) | rot(row[u], k - w)
        row[v] = rot(row[v], w) | rot(row[v], k - w)
        reach[t] = row

    for v in range(nv):
        if not (reach[0][v] >> (beta[v] % k)) & 1:
            return None

    partial = [0] * nv
    choices = [0] * len(tails)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), m + 200))

    def dfs(pos: int) -> bool:
        if pos == m:
            return True
        e = order[pos]
        u, v, w = tails[e], heads[e], ws[e]
        nxt = reach[pos + 1]
        for c in (0, 1):
            du = w if c == 0 else k - w
            partial[u] = (partial[u] + du) % k
            partial[v] = (partial[v] - du) % k
            if ((nxt[u] >> ((beta[u] - partial[u]) % k)) & 1) and (
                (nxt[v] >> ((beta[v] - partial[v]) % k)) & 1
            ):
                choices[e] = c
                if dfs(pos + 1):
                    return True
            partial[u] = (partial[u] - du) % k
            partial[v] = (partial[v] + du) % k
        return False

    if dfs(0):
        assert all((beta[v] - partial[v]) % k == 0 for v in range(nv))
        return choices
    return None
