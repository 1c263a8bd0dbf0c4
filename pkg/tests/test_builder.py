import itertools

import pytest

from zpflow.basis_builder import (
    RepresentResult,
    Route,
    bases_required,
    bases_required_any_shadow,
    bases_required_zero_sum,
    mader_degree,
    meets_threshold,
    replay,
    represent,
    represent_zero_sum,
    shadow_class_floor,
)
from zpflow.errors import (
    Infeasible,
    TargetNotZeroSum,
    UnsupportedSupportSize,
    WrongSpaceKind,
)
from zpflow.generators import gen_family, gen_zero_sum_family
from zpflow.zpn_linear import BasisFamily, GroupVec, SpaceKind, sum_vecs


def V(p, *dense):
    return GroupVec.from_dense(p, dense)


def resum(fam, result):
    by_tag = {(s, c): v for s, c, v in fam.union()}
    return sum_vecs(
        (by_tag[t] for t in result.subset), fam.dim, fam.modulus
    )


# -- thresholds: these exact numbers are what the solvers promise against --


def test_threshold_values_frozen():
    assert mader_degree(3) == 5
    assert mader_degree(5) == 11
    assert bases_required(3, 1) == 41
    assert bases_required(5, 1) == 91
    assert bases_required_any_shadow(3) == 121
    assert bases_required_any_shadow(5) == 883
    assert bases_required_zero_sum(3) == 41
    assert bases_required_zero_sum(5) == 179
    assert shadow_class_floor(3, 3) == 120
    assert shadow_class_floor(5, 4) == 352


def test_meets_threshold():
    fam = gen_family(3, 2, 41, 1, seed=0)
    assert meets_threshold(fam)
    small = gen_family(3, 2, 40, 1, seed=0)
    assert not meets_threshold(small)


# -- the three structured routes --


def test_base_case_dimension_one():
    p = 5
    fam = BasisFamily.make(1, p, [[V(p, 2)] for _ in range(p - 1)])
    for t in range(p):
        res = represent(fam, V(p, t))
        assert not isinstance(res, Infeasible)
        assert res.trace[0].route is Route.BASE_CASE
        assert resum(fam, res) == V(p, t)


def test_i_vector_route_on_tree_families():
    p = 3
    t = bases_required(p, 1)
    for n in (2, 3):
        fam = gen_family(p, n, t, 1, seed=77)
        for dense in itertools.product(range(p), repeat=n):
            tgt = GroupVec.from_dense(p, dense)
            res = represent(fam, tgt)
            assert not isinstance(res, Infeasible)
            assert not res.used_fallback
            assert res.trace[0].route is Route.I_VECTOR
            assert resum(fam, res) == tgt


def test_shadow_route_on_unicyclic_families():
    p, n = 3, 3
    t = bases_required(p, 1)
    fam = gen_family(p, n, t, 1, seed=78, style="unicyclic")
    hits = 0
    for dense in itertools.product(range(p), repeat=n):
        tgt = GroupVec.from_dense(p, dense)
        res = represent(fam, tgt)
        assert not isinstance(res, Infeasible)
        assert not res.used_fallback
        if any(s.route is Route.SHADOW_GRAPH for s in res.trace):
            hits += 1
        assert resum(fam, res) == tgt
    # unicyclic families carry no single-support columns, so the shadow
    # route is the only structured way in
    assert hits == p**n


def test_zero_sum_route():
    p, n = 3, 3
    t = bases_required_zero_sum(p)
    fam = gen_zero_sum_family(p, n, t, seed=79)
    assert fam.space_kind is SpaceKind.ZERO_SUM
    for dense in itertools.product(range(p), repeat=n - 1):
        tail = (-sum(dense)) % p
        tgt = GroupVec.from_dense(p, dense + (tail,))
        res = represent_zero_sum(fam, tgt)
        assert not isinstance(res, Infeasible)
        assert not res.used_fallback
        assert resum(fam, res) == tgt


# -- option handling and errors --


def test_prefer_oracle_route():
    p = 3
    fam = gen_family(p, 2, 41, 1, seed=80)
    tgt = V(p, 1, 2)
    res = represent(fam, tgt, prefer=Route.ORACLE)
    assert res.trace[0].route is Route.ORACLE
    assert res.used_fallback
    assert resum(fam, res) == tgt


def test_fallback_off_reports_infeasible_when_no_route():
    # two bases of Z_3^2: far below every structural threshold and with no
    # i-vector; without the oracle nothing applies
    p = 3
    fam = BasisFamily.make(
        2, p, [[V(p, 1, 1), V(p, 1, 2)], [V(p, 2, 2), V(p, 2, 1)]]
    )
    res = represent(fam, V(p, 0, 1), allow_fallback=False)
    assert isinstance(res, Infeasible)


def test_fallback_is_exact():
    # same family, fallback on: the oracle must still find every target the
    # union can reach, and certify the rest
    p = 3
    fam = BasisFamily.make(
        2, p, [[V(p, 1, 1), V(p, 1, 2)], [V(p, 2, 2), V(p, 2, 1)]]
    )
    from zpflow.subset_oracle import subset_sum

    union = [v for _, _, v in fam.union()]
    for dense in itertools.product(range(p), repeat=2):
        tgt = GroupVec.from_dense(p, dense)
        truth = subset_sum(union, tgt)
        got = represent(fam, tgt)
        assert isinstance(got, Infeasible) == isinstance(truth, Infeasible)
        if not isinstance(got, Infeasible):
            assert resum(fam, got) == tgt


def test_support_three_rejected():
    p = 3
    fam = BasisFamily.make(
        3, p, [[V(p, 1, 1, 1), V(p, 0, 1, 0), V(p, 0, 0, 1)]]
    )
    with pytest.raises(UnsupportedSupportSize):
        represent(fam, V(p, 1, 0, 0))


def test_represent_rejects_zero_sum_family():
    p = 3
    fam = gen_zero_sum_family(p, 2, 5, seed=81)
    with pytest.raises(WrongSpaceKind):
        represent(fam, V(p, 1, 2))


def test_represent_zero_sum_rejects_full_family():
    p = 3
    fam = gen_family(p, 2, 5, 1, seed=82)
    with pytest.raises(WrongSpaceKind):
        represent_zero_sum(fam, V(p, 1, 2))


def test_represent_zero_sum_rejects_bad_target():
    p = 3
    fam = gen_zero_sum_family(p, 2, 41, seed=83)
    with pytest.raises(TargetNotZeroSum):
        represent_zero_sum(fam, V(p, 1, 1))


def test_subset_tags_are_unique_and_resum():
    p = 3
    fam = gen_family(p, 3, 41, 1, seed=84)
    tgt = V(p, 2, 0, 1)
    res = represent(fam, tgt)
    assert len(set(res.subset)) == len(res.subset)
    assert all(0 <= s < fam.t and 0 <= c < fam.dim for s, c in res.subset)
    assert resum(fam, res) == tgt


def test_replay():
    p = 3
    fam = gen_family(p, 3, 41, 1, seed=85)
    tgt = V(p, 1, 1, 2)
    res = represent(fam, tgt)
    assert replay(fam, tgt, res)
    other = V(p, 2, 1, 1)
    assert not replay(fam, other, res)


def test_represent_is_deterministic():
    p = 3
    fam = gen_family(p, 3, 41, 1, seed=86, style="unicyclic")
    tgt = V(p, 0, 2, 1)
    a = represent(fam, tgt)
    b = represent(fam, tgt)
    assert a.subset == b.subset
    assert [s.route for s in a.trace] == [s.route for s in b.trace]


def test_trace_serialization():
    p = 3
    fam = gen_family(p, 2, 41, 1, seed=87)
    res = represent(fam, V(p, 1, 0))
    d = res.to_json_dict()
    assert {"subset", "trace"} <= set(d)
    assert all({"route", "dim"} <= set(step) for step in d["trace"])


def test_result_route_property():
    p = 3
    fam = gen_family(p, 2, 41, 1, seed=88)
    res = represent(fam, V(p, 2, 2))
    assert isinstance(res, RepresentResult)
    assert res.route is res.trace[0].route
