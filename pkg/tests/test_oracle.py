import itertools
import random

import pytest

from zpflow.errors import Infeasible, StateBudgetExceeded
from zpflow.subset_oracle import GroupStateTable, is_additive_basis, subset_sum
from zpflow.zpn_linear import GroupVec, sum_vecs


def V(p, *dense):
    return GroupVec.from_dense(p, dense)


def naive_subset_sums(vecs, dim, p):
    """All reachable targets by explicit 2^n enumeration."""
    reach = set()
    for mask in range(1 << len(vecs)):
        chosen = [vecs[i] for i in range(len(vecs)) if mask >> i & 1]
        reach.add(sum_vecs(chosen, dim, p).to_dense())
    return reach


def test_subset_sum_examples():
    p = 3
    vecs = [V(p, 1, 0), V(p, 1, 1)]
    assert subset_sum(vecs, V(p, 2, 1)) == [0, 1]
    assert subset_sum(vecs, V(p, 0, 0)) == []
    r = subset_sum(vecs, V(p, 0, 2))
    assert isinstance(r, Infeasible)


def test_subset_sum_empty_family():
    p = 5
    assert subset_sum([], V(p, 0, 0)) == []
    assert isinstance(subset_sum([], V(p, 1, 0)), Infeasible)


def test_subset_sum_matches_enumeration():
    rng = random.Random(11)
    for trial in range(60):
        p = rng.choice([2, 3, 5])
        dim = rng.randrange(1, 4)
        vecs = [
            GroupVec.from_dense(p, [rng.randrange(p) for _ in range(dim)])
            for _ in range(rng.randrange(0, 7))
        ]
        reach = naive_subset_sums(vecs, dim, p)
        for tgt_dense in itertools.product(range(p), repeat=dim):
            tgt = GroupVec.from_dense(p, tgt_dense)
            got = subset_sum(vecs, tgt)
            if tgt_dense in reach:
                assert not isinstance(got, Infeasible), (trial, tgt_dense)
                assert sum_vecs((vecs[i] for i in got), dim, p) == tgt
            else:
                assert isinstance(got, Infeasible), (trial, tgt_dense)


def test_subset_sum_witness_is_minimum_cardinality():
    rng = random.Random(13)
    for _ in range(40):
        p = 3
        dim = 2
        vecs = [
            GroupVec.from_dense(p, [rng.randrange(p) for _ in range(dim)])
            for _ in range(6)
        ]
        tgt = GroupVec.from_dense(p, [rng.randrange(p) for _ in range(dim)])
        got = subset_sum(vecs, tgt)
        if isinstance(got, Infeasible):
            continue
        best = min(
            (
                bin(mask).count("1")
                for mask in range(1 << len(vecs))
                if sum_vecs(
                    (vecs[i] for i in range(len(vecs)) if mask >> i & 1), dim, p
                )
                == tgt
            ),
        )
        assert len(got) == best


def test_is_additive_basis_examples():
    p = 3
    # a single 1 cannot reach 2 one-dimensionally without a second copy
    ok, missing = is_additive_basis([V(p, 1)], 1, p)
    assert not ok and missing == V(p, 2)
    ok, missing = is_additive_basis([V(p, 1), V(p, 1)], 1, p)
    assert ok and missing is None
    # {1,2} over Z_3 in one dimension: reaches 0,1,2,(1+2)=0 -- everything
    ok, _ = is_additive_basis([V(p, 1), V(p, 2)], 1, p)
    assert ok


def test_is_additive_basis_zero_sum_only():
    p = 3
    vecs = [GroupVec.make(2, p, {1: 1, 2: 2}), GroupVec.make(2, p, {1: 2, 2: 1})]
    ok, _ = is_additive_basis(vecs, 2, p, zero_sum_only=True)
    assert ok
    ok, missing = is_additive_basis(vecs, 2, p)
    assert not ok and missing is not None
    assert not missing.is_zero_sum()


def test_is_additive_basis_missing_is_lexicographic_first():
    p = 3
    ok, missing = is_additive_basis([V(p, 0, 1)], 2, p)
    assert not ok
    # (0,0) and (0,1) reachable; first missing in lex order is (0,2)
    assert missing == V(p, 0, 2)


def test_group_state_table():
    p = 3
    t = GroupStateTable.build([V(p, 1, 1), V(p, 1, 2)])
    assert t.is_reachable(V(p, 0, 0))
    assert t.is_reachable(V(p, 2, 0))
    assert not t.is_reachable(V(p, 0, 1))
    assert int(t.reachable.sum()) == 4  # 00, 11, 12, 20


def test_state_budget(monkeypatch):
    monkeypatch.setenv("ZPFLOW_STATE_BUDGET", "100")
    p = 5
    vecs = [V(p, 1, 0, 0), V(p, 0, 1, 0), V(p, 0, 0, 1)]
    with pytest.raises(StateBudgetExceeded):
        subset_sum(vecs, V(p, 1, 1, 1))  # 5^3 = 125 > 100
    monkeypatch.setenv("ZPFLOW_STATE_BUDGET", "200")
    assert subset_sum(vecs, V(p, 1, 1, 1)) == [0, 1, 2]
