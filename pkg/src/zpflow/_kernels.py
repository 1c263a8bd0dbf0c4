"""Kernel dispatch and the algorithms built on top of the per-pass primitives.

The compiled extension (``zpflow._ck``) is preferred when importable; the
numpy/python lane is the fallback.  ``ZPFLOW_KERNEL`` forces a lane:
``python``, ``compiled`` or ``auto`` (default).

State-space convention: elements of Z_p^n are flattened C-order with the first
coordinate most significant, so flat order coincides with lexicographic order
on coordinate tuples.
"""

from __future__ import annotations

import os
from typing import Optional, Sequence

import numpy as np

from . import _kernels_py

_mode = os.environ.get("ZPFLOW_KERNEL", "auto")
if _mode not in {"auto", "python", "compiled"}:
    raise RuntimeError(f"ZPFLOW_KERNEL must be auto, python or compiled; got {_mode!r}")

_impl = _kernels_py
if _mode != "python":
    try:
        from . import _ck as _impl  # type: ignore[no-redef]
    except ImportError:
        if _mode == "compiled":
            raise
        _impl = _kernels_py


def backend() -> str:
    """Name of the active kernel lane: 'compiled' or 'python'."""
    return _impl.BACKEND


_INF = np.int32(2**30)

# Memory allowance for the stack of suffix-distance tables, overridable for
# tests; beyond it the tables are recomputed from strided checkpoints.
_WITNESS_MEM_ENV = "ZPFLOW_WITNESS_MEM"
_WITNESS_MEM_DEFAULT = 256 * 2**20


def flat_index(digits: Sequence[int], p: int) -> int:
    s = 0
    for d in digits:
        s = s * p + (d % p)
    return s


def unflatten(state: int, p: int, n: int) -> tuple:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = state % p
        state //= p
    return tuple(out)


def reachable_table(p: int, n: int, items: Sequence[Sequence[int]]) -> np.ndarray:
    """Boolean table over Z_p^n: which states are subset-sums of ``items``."""
    size = p**n
    table = np.zeros(size, dtype=np.uint8)
    table[0] = 1
    for it in items:
        table = _impl.or_shift(table, tuple(it), p)
    return table


def _suffix_tables(p: int, n: int, items, mem_limit: int):
    """All suffix min-cardinality tables, or a checkpointed accessor.

    suffix[i][s] = least number of items from items[i:] summing to s (INF if
    unreachable).  Returns a function i -> table.
    """
    size = p**n
    count = len(items) + 1
    base = np.full(size, _INF, dtype=np.int32)
    base[0] = 0
    bytes_needed = count * size * 4
    if bytes_needed <= mem_limit:
        tables = [None] * count
        tables[count - 1] = base
        for i in range(len(items) - 1, -1, -1):
            tables[i] = _impl.min_shift1(tables[i + 1], tuple(items[i]), p)
        return lambda i: tables[i]

    # Strided checkpoints: keep every K-th table, recompute windows on demand.
    stride = max(2, int(np.ceil(bytes_needed / (mem_limit // 2))))
    checkpoints = {count - 1: base}
    cur = base
    for i in range(len(items) - 1, -1, -1):
        cur = _impl.min_shift1(cur, tuple(items[i]), p)
        if i % stride == 0:
            checkpoints[i] = cur
    window: dict = {}

    def get(i: int) -> np.ndarray:
        if i in checkpoints:
            return checkpoints[i]
        if i in window:
            return window[i]
        anchor = i + (stride - i % stride) % stride
        anchor = min(anchor, count - 1)
        while anchor not in checkpoints:
            anchor += 1
        window.clear()
        cur = checkpoints[anchor]
        for j in range(anchor - 1, i - 1, -1):
            cur = _impl.min_shift1(cur, tuple(items[j]), p)
            window[j] = cur
        return window[i]

    return get


def min_card_witness(
    p: int, n: int, items: Sequence[Sequence[int]], target: Sequence[int]
) -> Optional[list]:
    """Indices of a minimum-cardinality sub-multiset of ``items`` summing to
    ``target`` over Z_p^n, ties broken towards earliest indices; None if the
    target is unreachable.

    Greedy reconstruction over suffix tables: item i is taken exactly when a
    completion of the residual target with one fewer item exists among the
    later items.  (A single global backpointer table is not sound here: with
    repeated values it can revisit the same index twice.)
    """
    items = [tuple(x % p for x in it) for it in items]
    mem_limit = int(os.environ.get(_WITNESS_MEM_ENV, _WITNESS_MEM_DEFAULT))
    get = _suffix_tables(p, n, items, mem_limit)
    tgt = tuple(t % p for t in target)
    d = int(get(0)[flat_index(tgt, p)])
    if d >= int(_INF):
        return None
    picked = []
    residual = list(tgt)
    for i, it in enumerate(items):
        if d == 0:
            break
        reduced = [(residual[j] - it[j]) % p for j in range(n)]
        if int(get(i + 1)[flat_index(reduced, p)]) == d - 1:
            picked.append(i)
            residual = reduced
            d -= 1
        # else suffix[i+1][residual] == d still holds, keep walking
    assert d == 0 and all(r == 0 for r in residual)
    return picked


def orientation_search(
    k: int,
    tails: Sequence[int],
    heads: Sequence[int],
    ws: Sequence[int],
    beta: Sequence[int],
    order: Sequence[int],
) -> Optional[list]:
    """Dispatch the orientation backtracking search.

    Returns per-edge choices (0 = keep tail->head) or None.  Inputs are
    normalized here so both lanes see identical data.
    """
    ws = [w % k for w in ws]
    beta = [b % k for b in beta]
    if any(w == 0 for w in ws):
        raise ValueError("orientation search requires non-zero edge weights")
    if _impl.BACKEND == "compiled" and k <= 63:
        res = _impl.orientation_search(k, tails, heads, ws, beta, order)
    else:
        res = _kernels_py.orientation_search(k, tails, heads, ws, beta, order)
    return None if res is None else [int(c) for c in res]


def decision_order(
    num_edges: int, tails: Sequence[int], heads: Sequence[int], nv: int
) -> list:
    """Static edge order for the search: repeatedly pick the edge whose tighter
    endpoint has the fewest undecided incident edges (then the looser endpoint,
    then the edge id).  Finishing vertices early makes the per-vertex prune cut
    top of the tree."""
    rem = [0] * nv
    for e in range(num_edges):
        rem[tails[e]] += 1
        rem[heads[e]] += 1
    left = set(range(num_edges))
    order = []
    while left:
        best = min(
            left,
            key=lambda e: (
                min(rem[tails[e]], rem[heads[e]]),
                max(rem[tails[e]], rem[heads[e]]),
                e,
            ),
        )
        left.remove(best)
        order.append(best)
        rem[tails[best]] -= 1
        rem[heads[best]] -= 1
    return order
