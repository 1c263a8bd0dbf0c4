"""Exact subset-sum and additive-basis oracles over Z_p^n.

These run dynamic programs over all p^n group states, so they are the ground
truth the constructive machinery is checked against.  The state count is
capped by a budget (default 10^7, override via ZPFLOW_STATE_BUDGET) to keep
accidental blow-ups loud instead of slow.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ._kernels import min_card_witness, reachable_table, unflatten
from .errors import DimensionMismatch, Infeasible, StateBudgetExceeded
from .field import Modulus, ModulusLike, as_modulus
from .zpn_linear import GroupVec, sum_vecs

DEFAULT_STATE_BUDGET = 10**7
_BUDGET_ENV = "ZPFLOW_STATE_BUDGET"


def state_budget() -> int:
    raw = os.environ.get(_BUDGET_ENV)
    if raw is None:
        return DEFAULT_STATE_BUDGET
    try:
        return int(raw)
    except ValueError as exc:
        raise StateBudgetExceeded(f"bad {_BUDGET_ENV} value {raw!r}") from exc


def _check_budget(p: int, n: int) -> int:
    size = p**n
    budget = state_budget()
    if size > budget:
        raise StateBudgetExceeded(
            f"{p}^{n} = {size} states exceed the budget of {budget}"
        )
    return size


def _common_group(
    vecs: Sequence[GroupVec],
    dim: Optional[int],
    modulus: Optional[ModulusLike],
) -> Tuple[int, Modulus]:
    if vecs:
        d, m = vecs[0].dim, vecs[0].modulus
    else:
        if dim is None or modulus is None:
            raise DimensionMismatch("empty vector list needs explicit dim and modulus")
        d, m = dim, as_modulus(modulus)
    if dim is not None and dim != d:
        raise DimensionMismatch(f"expected dim {dim}, vectors have {d}")
    if modulus is not None and as_modulus(modulus) != m:
        raise DimensionMismatch("modulus mismatch")
    for v in vecs:
        if v.dim != d or v.modulus != m:
            raise DimensionMismatch("vectors from different groups")
    return d, m


@dataclass
class GroupStateTable:
    """Reachability table of subset sums over Z_p^n (flat lexicographic order)."""

    dim: int
    modulus: Modulus
    reachable: np.ndarray

    @classmethod
    def build(
        cls,
        vecs: Sequence[GroupVec],
        dim: Optional[int] = None,
        modulus: Optional[ModulusLike] = None,
    ) -> "GroupStateTable":
        d, m = _common_group(vecs, dim, modulus)
        _check_budget(m.value, d)
        table = reachable_table(m.value, d, [v.to_dense() for v in vecs])
        return cls(d, m, table)

    def is_reachable(self, target: GroupVec) -> bool:
        if target.dim != self.dim or target.modulus != self.modulus:
            raise DimensionMismatch("target lives in a different group")
        idx = 0
        p = self.modulus.value
        for v in target.to_dense():
            idx = idx * p + v
        return bool(self.reachable[idx])


def subset_sum(
    vecs: Sequence[GroupVec],
    target: GroupVec,
) -> Union[List[int], Infeasible]:
    """Indices of a sub-multiset of ``vecs`` summing to ``target``.

    Exact; deterministic witness (minimum cardinality, then earliest indices).
    """
    d, m = _common_group(vecs, target.dim, target.modulus)
    _check_budget(m.value, d)
    picked = min_card_witness(
        m.value, d, [v.to_dense() for v in vecs], target.to_dense()
    )
    if picked is None:
        return Infeasible(reason="target is not a subset sum of the given vectors")
    assert sum_vecs((vecs[i] for i in picked), d, m) == target
    return picked


def _zero_sum_mask(p: int, n: int) -> np.ndarray:
    """uint8 array over the flat state space: 1 where coordinates sum to 0."""
    ds = np.zeros((), dtype=np.uint8)
    for _ in range(n):
        ds = (ds[..., None] + np.arange(p, dtype=np.uint8)) % p
    return (ds.reshape(-1) == 0).astype(np.uint8)


def is_additive_basis(
    vecs: Sequence[GroupVec],
    dim: Optional[int] = None,
    modulus: Optional[ModulusLike] = None,
    *,
    zero_sum_only: bool = False,
) -> Tuple[bool, Optional[GroupVec]]:
    """Whether every element of Z_p^n (or of the zero-sum subspace, when
    flagged) is a subset sum of ``vecs``.

    Returns (answer, first missing target in lexicographic order or None).
    """
    d, m = _common_group(vecs, dim, modulus)
    p = m.value
    _check_budget(p, d)
    table = reachable_table(p, d, [v.to_dense() for v in vecs])
    missing = table == 0
    if zero_sum_only:
        missing &= _zero_sum_mask(p, d) == 1
    idx = int(np.argmax(missing))
    if not missing[idx]:
        return True, None
    return False, GroupVec.from_dense(m, unflatten(idx, p, d))
