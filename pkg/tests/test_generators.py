import pytest

from zpflow.flows import boundary_of_flow
from zpflow.generators import (
    gen_balanced_digraph,
    gen_balanced_prescription,
    gen_bipartite,
    gen_boundary,
    gen_boundary_graph,
    gen_dense_multigraph,
    gen_digraph,
    gen_family,
    gen_multigraph,
    gen_weights,
    gen_zero_sum_family,
)
from zpflow.graph import edge_connectivity
from zpflow.zpn_linear import SpaceKind


def test_generators_are_deterministic():
    assert gen_family(3, 3, 10, 1, seed=1) == gen_family(3, 3, 10, 1, seed=1)
    assert gen_family(3, 3, 10, 1, seed=1) != gen_family(3, 3, 10, 1, seed=2)
    assert gen_multigraph(5, 3, seed=4) == gen_multigraph(5, 3, seed=4)
    assert gen_digraph(4, 6, seed=4) == gen_digraph(4, 6, seed=4)


def test_gen_family_shape():
    fam = gen_family(5, 4, 12, 2, seed=9)
    assert fam.t == 12 and fam.dim == 4
    assert fam.space_kind is SpaceKind.FULL
    assert fam.shadow_count_size2() == 2
    assert fam.max_support_size() <= 2


def test_gen_family_dimension_one():
    fam = gen_family(5, 1, 8, 0, seed=10)
    assert fam.dim == 1 and fam.t == 8
    with pytest.raises(ValueError):
        gen_family(5, 1, 8, 1, seed=10)


def test_gen_family_unicyclic():
    fam = gen_family(3, 5, 7, 1, seed=11, style="unicyclic")
    assert fam.shadow_count_size2() == 1
    # no single-support columns anywhere
    assert all(v.support_size == 2 for _, _, v in fam.union())


def test_gen_zero_sum_family():
    fam = gen_zero_sum_family(5, 3, 9, seed=12)
    assert fam.space_kind is SpaceKind.ZERO_SUM
    assert all(v.is_zero_sum() for _, _, v in fam.union())


def test_gen_multigraph_connectivity():
    for seed in range(5):
        g = gen_multigraph(5, 4, seed=seed)
        assert edge_connectivity(g) >= 4


def test_gen_dense_multigraph_degree():
    for seed in range(5):
        g = gen_dense_multigraph(5, 6, seed=seed)
        assert g.avg_degree() >= 6


def test_gen_balanced_digraph_has_zero_flow_boundary():
    for seed in range(5):
        d = gen_balanced_digraph(5, 3, seed=seed)
        din, dout = d.in_out_degrees()
        assert all(din[v] == dout[v] for v in d.vertices)


def test_gen_boundary_is_flow_boundary():
    d = gen_digraph(4, 6, seed=13)
    b = gen_boundary(d, 7, seed=14)
    assert sum(b.as_dict().values()) % 7 == 0


def test_gen_boundary_graph_sums_to_zero():
    g = gen_multigraph(4, 2, seed=15)
    b = gen_boundary_graph(g, 5, seed=16)
    assert sum(b.value(v) for v in g.vertices) % 5 == 0


def test_gen_weights_nonzero():
    g = gen_dense_multigraph(4, 3, seed=17)
    w = gen_weights(g, 5, seed=18)
    assert all(1 <= x <= 4 for x in w.as_dict().values())
    assert set(w.as_dict()) == {e for e, _, _ in g.edges}


def test_gen_bipartite_and_prescription():
    g, p1, p2 = gen_bipartite(2, 3, 6, seed=19)
    s1, s2 = set(p1), set(p2)
    assert not s1 & s2
    for _, u, v in g.edges:
        assert (u in s1) != (v in s1)
    f = gen_balanced_prescription(p1, p2, 3, seed=20)
    assert sum(f.get(v, 0) for v in p1) % 3 == sum(f.get(v, 0) for v in p2) % 3
