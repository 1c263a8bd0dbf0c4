import itertools
import random

import pytest

from zpflow.errors import (
    EvenModulus,
    Infeasible,
    MissingArcValue,
    NonCoprime,
    NonPrimeModulus,
    NotBipartite,
    UnbalancedPrescription,
    ZeroWeight,
)
from zpflow.field import Modulus
from zpflow.flows import (
    Boundary,
    Digraph,
    EdgeWeighting,
    FlowAssignment,
    ListAssignment,
    asf_connectivity_threshold,
    boundary_of_flow,
    construct_asf,
    edge_vector_correspondence,
    is_antisymmetric_flow,
    reduce_list_flow,
    scaled_orientation,
    solve_01_flow,
    solve_beta_orientation,
    solve_list_flow,
    solve_orientation_via_tree_bases,
    solve_orientation_via_vectors,
    solve_prescribed_degrees,
    solve_weighted_orientation,
    solve_weighted_orientation_inductive,
    spanning_tree_basis,
    verify_orientation,
)
from zpflow.generators import (
    gen_boundary_graph,
    gen_dense_multigraph,
    gen_multigraph,
    gen_weights,
)
from zpflow.graph import Multigraph


def D(n, pairs, mod=None):
    return Digraph.from_pairs(n, pairs)


def test_digraph_basics():
    d = Digraph.from_pairs(3, [(1, 2), (2, 3), (3, 1)])
    assert d.n == 3 and d.m == 3
    din, dout = d.in_out_degrees()
    assert din == {1: 1, 2: 1, 3: 1} == dout
    u = d.underlying()
    assert u.m == 3 and u.edges[0][1:] == (1, 2)


def test_boundary_must_sum_to_zero():
    Boundary.of({1: 1, 2: 2}, 3)
    with pytest.raises(ValueError):
        Boundary.of({1: 1, 2: 1}, 3)


def test_boundary_of_flow():
    d = Digraph.from_pairs(2, [(1, 2), (1, 2)])
    f = FlowAssignment.of({0: 1, 1: 3}, 5)
    b = boundary_of_flow(d, f)
    assert b.as_dict() == {1: 4, 2: 1}


def test_orientation_single_edge():
    g = Multigraph.from_pairs(2, [(1, 2)])
    d = solve_beta_orientation(g, Boundary.of({1: 1, 2: 2}, 3))
    assert not isinstance(d, Infeasible)
    assert d.arcs == ((0, 1, 2),)
    d = solve_beta_orientation(g, Boundary.of({1: 2, 2: 1}, 3))
    assert d.arcs == ((0, 2, 1),)
    r = solve_beta_orientation(g, Boundary.of({1: 0, 2: 0}, 3))
    assert isinstance(r, Infeasible)


def test_orientation_triangle_zero_boundary():
    g = Multigraph.from_pairs(3, [(1, 2), (2, 3), (3, 1)])
    d = solve_beta_orientation(g, Boundary.of({1: 0, 2: 0, 3: 0}, 3))
    assert not isinstance(d, Infeasible)
    din, dout = d.in_out_degrees()
    assert all(din[v] == dout[v] for v in d.vertices)  # a directed cycle


def test_weighted_orientation_zero_weight_rejected():
    g = Multigraph.from_pairs(2, [(1, 2)])
    w = EdgeWeighting.of({0: 3}, 3)
    with pytest.raises(ZeroWeight):
        solve_weighted_orientation(g, w, Boundary.of({1: 0, 2: 0}, 3))


def test_weighted_orientation_missing_weight_rejected():
    g = Multigraph.from_pairs(2, [(1, 2), (1, 2)])
    w = EdgeWeighting.of({0: 1}, 3)
    with pytest.raises(MissingArcValue):
        solve_weighted_orientation(g, w, Boundary.of({1: 0, 2: 0}, 3))


def test_weighted_orientation_exhaustive_cross_check():
    """Solver verdict matches enumerating all 2^m orientations."""
    rng = random.Random(23)
    for _ in range(40):
        k = rng.choice([2, 3, 4, 5, 9])
        n = rng.randrange(2, 5)
        g = gen_dense_multigraph(n, 1, seed=rng.randrange(10**6))
        if g.m > 7:
            g = Multigraph(g.vertices, g.edges[:7])
        w = gen_weights(g, k, seed=rng.randrange(10**6))
        beta = gen_boundary_graph(g, k, seed=rng.randrange(10**6))
        got = solve_weighted_orientation(g, w, beta)
        wd = w.as_dict()
        feasible = False
        for mask in range(1 << g.m):
            acc = {v: 0 for v in g.vertices}
            for e, u, v in g.edges:
                tail, head = (u, v) if not mask >> e & 1 else (v, u)
                acc[tail] = (acc[tail] + wd[e]) % k
                acc[head] = (acc[head] - wd[e]) % k
            if all(acc[v] == beta.value(v) for v in g.vertices):
                feasible = True
                break
        assert feasible == (not isinstance(got, Infeasible))
        if feasible:
            assert verify_orientation(g, w, beta, got) is None


def test_verify_orientation_reports_failing_vertex():
    d = Digraph.from_pairs(2, [(1, 2)])
    w = EdgeWeighting.of({0: 1}, 3)
    g = d.underlying()
    ok_beta = Boundary.of({1: 1, 2: 2}, 3)
    bad_beta = Boundary.of({1: 2, 2: 1}, 3)
    assert verify_orientation(g, w, ok_beta, d) is None
    assert verify_orientation(g, w, bad_beta, d) == 1


def test_mod9_weight3_instance_infeasible():
    # four parallel weight-3 edges mod 9 reach only {0, 3, 6} at a vertex
    g = Multigraph.from_pairs(2, [(1, 2)] * 4)
    w = EdgeWeighting.of({e: 3 for e in range(4)}, 9)
    r = solve_weighted_orientation(g, w, Boundary.of({1: 1, 2: 8}, 9))
    assert isinstance(r, Infeasible)
    ok = solve_weighted_orientation(g, w, Boundary.of({1: 3, 2: 6}, 9))
    assert not isinstance(ok, Infeasible)


def test_reduce_list_flow_worked_example():
    d = Digraph.from_pairs(2, [(1, 2)])
    lists = ListAssignment.of({0: (1, 2)}, 5)
    beta = Boundary.of({1: 1, 2: 4}, 5)
    red = reduce_list_flow(d, lists, beta)
    # weight 2^{-1} (2 - 1) = 3; mean 2^{-1} (1 + 2) = 4 moves across
    assert red.weights.as_dict() == {0: 3}
    assert red.boundary.as_dict() == {1: 2, 2: 3}


def test_reduce_list_flow_zero_one_gives_inverse_of_two():
    d = Digraph.from_pairs(2, [(1, 2)])
    lists = ListAssignment.of({0: (0, 1)}, 5)
    red = reduce_list_flow(d, lists, Boundary.of({}, 5))
    assert red.weights.as_dict() == {0: 3}  # 2^{-1} mod 5


def test_reduce_list_flow_needs_odd_modulus():
    d = Digraph.from_pairs(2, [(1, 2)])
    lists = ListAssignment.of({0: (0, 1)}, 4)
    with pytest.raises(EvenModulus):
        reduce_list_flow(d, lists, Boundary.of({}, 4))


def test_list_assignment_rejects_equal_values():
    with pytest.raises(ValueError):
        ListAssignment.of({0: (2, 2)}, 5)
    with pytest.raises(ValueError):
        ListAssignment.of({0: (1, 6)}, 5)  # 6 = 1 mod 5


def test_solve_list_flow_examples():
    d = Digraph.from_pairs(2, [(1, 2)])
    lists = ListAssignment.of({0: (1, 2)}, 5)
    f = solve_list_flow(d, lists, Boundary.of({1: 1, 2: 4}, 5))
    assert f.as_dict() == {0: 1}
    f = solve_list_flow(d, lists, Boundary.of({1: 2, 2: 3}, 5))
    assert f.as_dict() == {0: 2}
    r = solve_list_flow(d, lists, Boundary.of({1: 0, 2: 0}, 5))
    assert isinstance(r, Infeasible)


def test_solve_list_flow_matches_enumeration():
    rng = random.Random(31)
    for _ in range(30):
        k = rng.choice([3, 5, 7])
        n = rng.randrange(2, 4)
        m = rng.randrange(1, 5)
        pairs = []
        for _ in range(m):
            u = rng.randrange(1, n + 1)
            v = rng.randrange(1, n + 1)
            pairs.append((u, v) if u != v else (1, 2))
        d = Digraph.from_pairs(n, pairs)
        lists = ListAssignment.of(
            {a: tuple(rng.sample(range(k), 2)) for a in range(m)}, k
        )
        ld = lists.as_dict()
        ends = d.arc_by_id()
        reachable = set()
        for combo in itertools.product(*(ld[a] for a in range(m))):
            acc = {v: 0 for v in d.vertices}
            for a, val in enumerate(combo):
                t, h = ends[a]
                acc[t] = (acc[t] + val) % k
                acc[h] = (acc[h] - val) % k
            reachable.add(tuple(acc[v] for v in d.vertices))
        for dense in reachable:
            beta = Boundary.of(dict(zip(d.vertices, dense)), k)
            f = solve_list_flow(d, lists, beta)
            assert not isinstance(f, Infeasible)
            assert boundary_of_flow(d, f).as_dict() == beta.as_dict()
            assert all(f.as_dict()[a] in ld[a] for a in range(m))


def test_scaled_orientation():
    g = Multigraph.from_pairs(2, [(1, 2)])
    beta = Boundary.of({1: 2, 2: 1}, 3)
    d = scaled_orientation(g, 2, beta)
    assert not isinstance(d, Infeasible)
    assert d.arcs == ((0, 1, 2),)
    w = EdgeWeighting.of({0: 2}, 3)
    assert verify_orientation(g, w, beta, d) is None
    tri = Multigraph.from_pairs(3, [(1, 2), (2, 3), (3, 1)])
    zero = Boundary.of({1: 0, 2: 0, 3: 0}, 3)
    assert not isinstance(scaled_orientation(tri, 2, zero), Infeasible)
    with pytest.raises(NonCoprime):
        scaled_orientation(tri, 3, zero)
    with pytest.raises(EvenModulus):
        scaled_orientation(tri, 2, Boundary.of({1: 0, 2: 0, 3: 0}, 4))


def test_solve_01_flow():
    d = Digraph.from_pairs(2, [(1, 2)])
    f = solve_01_flow(d, Boundary.of({1: 1, 2: 4}, 5))
    assert f.as_dict() == {0: 1}
    f = solve_01_flow(d, Boundary.of({1: 0, 2: 0}, 5))
    assert f.as_dict() == {0: 0}
    r = solve_01_flow(d, Boundary.of({1: 2, 2: 3}, 5))
    assert isinstance(r, Infeasible)


def test_asf_threshold_table():
    assert [asf_connectivity_threshold(k) for k in (2, 3, 4, 7)] == [12, 9, 8, 7]
    with pytest.raises(ValueError):
        asf_connectivity_threshold(1)


def test_is_antisymmetric_flow():
    d = Digraph.from_pairs(2, [(1, 2), (2, 1)])
    assert is_antisymmetric_flow(d, FlowAssignment.of({0: 1, 1: 1}, 5))
    # 2 and 3 are mutual inverses mod 5
    assert not is_antisymmetric_flow(d, FlowAssignment.of({0: 2, 1: 3}, 5))
    # zero value
    assert not is_antisymmetric_flow(d, FlowAssignment.of({0: 0, 1: 0}, 5))
    # boundary not identically zero
    d2 = Digraph.from_pairs(2, [(1, 2)])
    assert not is_antisymmetric_flow(d2, FlowAssignment.of({0: 1}, 5))


def test_construct_asf_two_cycle():
    d = Digraph.from_pairs(2, [(1, 2), (2, 1)])
    f = construct_asf(d, 2)
    assert not isinstance(f, Infeasible)
    assert is_antisymmetric_flow(d, f)
    assert set(f.as_dict().values()) <= {1, 2}


def test_construct_asf_rejects_k1():
    d = Digraph.from_pairs(2, [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        construct_asf(d, 1)


def test_construct_asf_infeasible_with_unbalanced_cut():
    # a single arc cannot carry a zero-boundary nowhere-zero flow
    d = Digraph.from_pairs(2, [(1, 2)])
    r = construct_asf(d, 3)
    assert isinstance(r, Infeasible)


def test_prescribed_degrees_parallel_edges():
    g = Multigraph.from_pairs(2, [(1, 2)] * 3)
    ids = solve_prescribed_degrees(g, [1], [2], 3, {1: 2, 2: 2})
    assert not isinstance(ids, Infeasible)
    assert len(ids) == 2
    r = solve_prescribed_degrees(
        Multigraph.from_pairs(2, [(1, 2)]), [1], [2], 3, {1: 2, 2: 2}
    )
    assert isinstance(r, Infeasible)
    assert solve_prescribed_degrees(g, [1], [2], 3, {}) == []


def test_prescribed_degrees_guards():
    g = Multigraph.from_pairs(2, [(1, 2)])
    with pytest.raises(EvenModulus):
        solve_prescribed_degrees(g, [1], [2], 4, {})
    with pytest.raises(ValueError):
        solve_prescribed_degrees(g, [1], [2], 1, {})
    with pytest.raises(UnbalancedPrescription):
        solve_prescribed_degrees(g, [1], [2], 3, {1: 1, 2: 2})
    tri = Multigraph.from_pairs(3, [(1, 2), (2, 3), (1, 3)])
    with pytest.raises(NotBipartite):
        solve_prescribed_degrees(tri, [1], [2, 3], 3, {})


def test_edge_vector_correspondence_example():
    d = Digraph.from_pairs(3, [(1, 2)])
    w = EdgeWeighting.of({0: 2}, 5)
    (vec,) = edge_vector_correspondence(d, w)
    assert vec.to_dense() == (2, 3, 0)
    assert vec.is_zero_sum()


def test_spanning_tree_basis_rank():
    d = Digraph.from_pairs(3, [(1, 2), (2, 3), (3, 1)])
    w = EdgeWeighting.of({0: 1, 1: 1, 2: 1}, 3)
    basis = spanning_tree_basis(d, w, [0, 1])
    assert len(basis) == 2
    with pytest.raises(Exception):
        spanning_tree_basis(d, w, [0, 1, 2])  # cycle, not a tree


def test_vector_route_agrees_with_search():
    rng = random.Random(41)
    p = 3
    for _ in range(30):
        g = gen_dense_multigraph(rng.randrange(2, 5), 1, seed=rng.randrange(10**6))
        if g.m > 6:
            g = Multigraph(g.vertices, g.edges[:6])
        w = gen_weights(g, p, seed=rng.randrange(10**6))
        beta = gen_boundary_graph(g, p, seed=rng.randrange(10**6))
        direct = solve_weighted_orientation(g, w, beta)
        via_vec = solve_orientation_via_vectors(g, w, beta)
        assert isinstance(direct, Infeasible) == isinstance(via_vec, Infeasible)
        if not isinstance(via_vec, Infeasible):
            assert verify_orientation(g, w, beta, via_vec) is None


def test_inductive_solver_agrees_and_requires_odd_prime():
    rng = random.Random(43)
    p = 5
    for _ in range(25):
        g = gen_dense_multigraph(rng.randrange(2, 5), 2, seed=rng.randrange(10**6))
        if g.m > 7:
            g = Multigraph(g.vertices, g.edges[:7])
        w = gen_weights(g, p, seed=rng.randrange(10**6))
        beta = gen_boundary_graph(g, p, seed=rng.randrange(10**6))
        direct = solve_weighted_orientation(g, w, beta)
        ind = solve_weighted_orientation_inductive(g, w, beta)
        assert isinstance(direct, Infeasible) == isinstance(ind, Infeasible)
        if not isinstance(ind, Infeasible):
            assert verify_orientation(g, w, beta, ind) is None
    g = Multigraph.from_pairs(2, [(1, 2)])
    with pytest.raises(NonPrimeModulus):
        solve_weighted_orientation_inductive(
            g, EdgeWeighting.of({0: 1}, 9), Boundary.of({1: 1, 2: 8}, 9)
        )
    with pytest.raises(EvenModulus):
        solve_weighted_orientation_inductive(
            g, EdgeWeighting.of({0: 1}, 2), Boundary.of({1: 1, 2: 1}, 2)
        )


def test_tree_bases_route_on_connected_instances():
    p = 3
    for i in range(10):
        g = gen_multigraph(4, 6, seed=6000 + i)
        w = EdgeWeighting.constant((e for e, _, _ in g.edges), 1, p)
        beta = gen_boundary_graph(g, p, seed=6100 + i)
        got = solve_orientation_via_tree_bases(g, w, beta, 4)
        assert not isinstance(got, Infeasible)
        assert verify_orientation(g, w, beta, got) is None


def test_orientation_reversal_symmetry():
    """Negating the boundary mirrors every solvable instance."""
    rng = random.Random(47)
    p = 3
    for _ in range(20):
        g = gen_dense_multigraph(3, 2, seed=rng.randrange(10**6))
        if g.m > 6:
            g = Multigraph(g.vertices, g.edges[:6])
        w = gen_weights(g, p, seed=rng.randrange(10**6))
        beta = gen_boundary_graph(g, p, seed=rng.randrange(10**6))
        neg = Boundary.of({v: -b for v, b in beta.as_dict().items()}, p)
        a = solve_weighted_orientation(g, w, beta)
        b = solve_weighted_orientation(g, w, neg)
        assert isinstance(a, Infeasible) == isinstance(b, Infeasible)
