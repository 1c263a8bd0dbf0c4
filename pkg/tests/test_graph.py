import itertools
import random

import pytest

from zpflow.errors import Infeasible
from zpflow.generators import gen_dense_multigraph, gen_multigraph, gen_sided_instance
from zpflow.graph import (
    Multigraph,
    PartitionCut,
    choose_partition,
    edge_connectivity,
    global_min_cut,
    mader_extract,
    spanning_tree_packing,
)


def cycle(n):
    return Multigraph.from_pairs(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete(n):
    return Multigraph.from_pairs(
        n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    )


def brute_connectivity(g):
    """Minimum cut weight over all proper bipartitions of the vertices."""
    if g.n < 2:
        return 0
    vs = list(g.vertices)
    best = g.m + 1
    for mask in range(1, 1 << (g.n - 1)):
        side = {vs[i] for i in range(g.n - 1) if (mask >> i) & 1}
        if not side:
            continue
        cut = sum(1 for _, u, v in g.edges if (u in side) != (v in side))
        best = min(best, cut)
    return best


def test_multigraph_basics():
    g = Multigraph.from_pairs(3, [(1, 2), (1, 2), (2, 3)])
    assert g.n == 3 and g.m == 3
    assert g.degrees() == {1: 2, 2: 3, 3: 1}
    assert g.avg_degree() == 2.0
    with pytest.raises(ValueError):
        Multigraph.from_pairs(2, [(1, 1)])  # loop


def test_contract_drops_inner_edges():
    g = Multigraph.from_pairs(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    h, anchor = g.contract([2, 3])
    assert anchor == 2
    assert h.n == 3
    # the 2-3 edge disappears, others keep their ids
    assert sorted(e for e, _, _ in h.edges) == [0, 2, 3]


def test_edge_connectivity_examples():
    assert edge_connectivity(cycle(5)) == 2
    assert edge_connectivity(complete(4)) == 3
    four_parallel = Multigraph.from_pairs(2, [(1, 2)] * 4)
    assert edge_connectivity(four_parallel) == 4
    disconnected = Multigraph.from_pairs(3, [(1, 2)])
    assert edge_connectivity(disconnected) == 0
    with pytest.raises(ValueError):
        edge_connectivity(Multigraph.from_pairs(1, []))


def test_edge_connectivity_matches_brute_force():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(2, 6)
        m = rng.randrange(0, 9)
        pairs = []
        for _ in range(m):
            u = rng.randrange(1, n + 1)
            v = rng.randrange(1, n + 1)
            if u != v:
                pairs.append((u, v))
        g = Multigraph.from_pairs(n, pairs)
        assert edge_connectivity(g) == brute_connectivity(g)


def test_global_min_cut_side_is_proper():
    g = cycle(6)
    w, side = global_min_cut(g)
    assert w == 2
    assert 0 < len(side) < g.n
    crossing = sum(1 for _, u, v in g.edges if (u in side) != (v in side))
    assert crossing == 2


def test_mader_extract_none_on_sparse():
    # trimming (degree < 2k) eats the path from both ends
    path = Multigraph.from_pairs(3, [(1, 2), (2, 3)])
    assert mader_extract(path, 1) is None


def test_mader_extract_k9():
    g = complete(9)  # avg degree 8 >= 4k for k = 2
    core = mader_extract(g, 2)
    assert core is not None and len(core) >= 2
    sub = g.induced(core)
    assert edge_connectivity(sub) >= 3  # contract: (k+1)-edge-connected


def test_mader_extract_density_guarantee():
    """Average degree >= 4k always yields a (k+1)-edge-connected piece."""
    rng = random.Random(17)
    for k in (1, 2, 3):
        for _ in range(25):
            g = gen_dense_multigraph(rng.randrange(3, 7), 4 * k, seed=rng.randrange(10**6))
            assert g.avg_degree() >= 4 * k
            core = mader_extract(g, k)
            assert core is not None, (k, g)
            sub = g.induced(core)
            assert edge_connectivity(sub) >= k + 1
            assert len(core) >= 2


def test_choose_partition_quarter_bound():
    g = Multigraph.from_pairs(4, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)])
    side1_of = {e: u for e, u, v in g.edges}
    cut = choose_partition(g, side1_of)
    assert isinstance(cut, PartitionCut)
    assert set(cut.side1) | set(cut.side2) == set(g.vertices)
    assert not set(cut.side1) & set(cut.side2)
    assert len(cut.selected_edges) >= -(-g.m // 4)
    for e, u, v in g.edges:
        if e in cut.selected_edges:
            assert side1_of[e] in cut.side1
            other = v if side1_of[e] == u else u
            assert other in cut.side2


def test_choose_partition_randomized_instances():
    for i in range(50):
        g, side1_of = gen_sided_instance(5, 3, seed=2000 + i)
        if g.m == 0:
            continue
        cut = choose_partition(g, side1_of)
        assert len(cut.selected_edges) >= -(-g.m // 4), (i, cut)
        s1, s2 = set(cut.side1), set(cut.side2)
        ends = g.edge_by_id()
        for e in cut.selected_edges:
            u, v = ends[e]
            a1 = side1_of[e]
            a2 = v if a1 == u else u
            assert a1 in s1 and a2 in s2


def test_packing_two_vertices_four_edges():
    g = Multigraph.from_pairs(2, [(1, 2)] * 4)
    trees = spanning_tree_packing(g, 2)
    assert not isinstance(trees, Infeasible)
    assert [len(t) for t in trees] == [1, 1]
    ids = {e for t in trees for e in t}
    assert len(ids) == 2


def test_packing_c4_infeasible_with_certificate():
    g = cycle(4)
    r = spanning_tree_packing(g, 2)
    assert isinstance(r, Infeasible)
    # the violating partition must actually violate Nash-Williams--Tutte:
    # crossing edges < count * (parts - 1)
    parts = r.certificate
    seen = sorted(v for part in parts for v in part)
    assert seen == sorted(g.vertices)
    crossing = 0
    where = {v: i for i, part in enumerate(parts) for v in part}
    for _, u, v in g.edges:
        if where[u] != where[v]:
            crossing += 1
    assert crossing < 2 * (len(parts) - 1)


def test_packing_k5():
    g = complete(5)  # 10 edges, 2 * (5-1) = 8 needed
    trees = spanning_tree_packing(g, 2)
    assert not isinstance(trees, Infeasible)
    ids = [e for t in trees for e in t]
    assert len(ids) == len(set(ids)) == 8
    for t in trees:
        sub = Multigraph(g.vertices, tuple(e for e in g.edges if e[0] in set(t)))
        assert edge_connectivity(sub) >= 1  # spanning and connected


def test_packing_matches_connectivity_generator():
    for i in range(10):
        g = gen_multigraph(5, 4, seed=3000 + i)
        trees = spanning_tree_packing(g, 2)
        assert not isinstance(trees, Infeasible), i
