"""Seeded instance generators.

Everything here is deterministic given (parameters, seed): generators draw
from ``random.Random(seed)`` only, so the same call produces the same object
on any platform.  Families come out *qualifying by construction*: the
tree-shaped bases guarantee that after any coordinate deletion each basis is
again a forest of pair-support columns plus one single-support column per
component, so some coordinate always owns enough single-support columns for
the structured recursion to continue (pigeonhole over at most n coordinates).
"""

from __future__ import annotations

import random
from typing import Dict, List, Sequence, Tuple

from .field import Modulus
from .flows import Boundary, Digraph, EdgeWeighting, FlowAssignment, boundary_of_flow
from .graph import Multigraph, edge_connectivity
from .zpn_linear import BasisFamily, GroupVec, SpaceKind


def _attachment_tree(rng: random.Random, n: int) -> List[Tuple[int, int]]:
    """Random spanning tree on 1..n: each vertex joins a random earlier one."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    return [(order[rng.randrange(i)], order[i]) for i in range(1, n)]


def _all_shadow_pairs(p: int) -> List[Tuple[int, int]]:
    """All p(p-1)/2 unordered pairs of non-zero values, lexicographic."""
    return [(a, b) for a in range(1, p) for b in range(a, p)]


def gen_family(
    p: int,
    n: int,
    t: int,
    ell: int,
    seed: int,
    style: str = "tree",
) -> BasisFamily:
    """A FULL family of t linear bases of Z_p^n with exactly ``ell`` distinct
    size-2 shadows among its support-2 columns.

    style "tree": each basis is a random spanning tree of the coordinates
    (edges carry the family's shadow values) plus one single-support column
    at a random coordinate.  style "unicyclic": each basis is a random
    unicyclic graph with an odd cycle, every edge carrying the same balanced
    shadow {a, a}; needs ell = 1, n >= 3, odd p, and exercises the
    shadow-graph route since no single-support columns exist at the top.
    """
    mod = Modulus(p)
    mod.require_prime()
    rng = random.Random(seed)
    if n == 1:
        if ell != 0:
            raise ValueError("dimension 1 has no support-2 columns; use ell=0")
        bases = [[GroupVec.make(1, mod, {1: rng.randrange(1, p)})] for _ in range(t)]
        return BasisFamily.make(1, mod, bases, SpaceKind.FULL)
    if ell < 1:
        raise ValueError("ell must be >= 1 for n >= 2 (trees need edges)")
    pool = _all_shadow_pairs(p)
    if ell > len(pool):
        raise ValueError(f"at most {len(pool)} distinct shadows exist for p={p}")

    if style == "tree":
        shadows = pool[:ell]
        counter = 0
        bases = []
        for _ in range(t):
            vecs = []
            for u, v in _attachment_tree(rng, n):
                a, b = shadows[counter % ell]
                counter += 1
                if rng.random() < 0.5:
                    a, b = b, a
                vecs.append(GroupVec.make(n, mod, {u: a, v: b}))
            coord = rng.randrange(1, n + 1)
            vecs.append(GroupVec.make(n, mod, {coord: rng.randrange(1, p)}))
            rng.shuffle(vecs)
            bases.append(vecs)
        fam = BasisFamily.make(n, mod, bases, SpaceKind.FULL)
    elif style == "unicyclic":
        if ell != 1:
            raise ValueError("unicyclic style produces exactly one shadow")
        if n < 3:
            raise ValueError("unicyclic style needs n >= 3 (an odd cycle)")
        mod.require_odd()
        a = rng.randrange(1, p)
        bases = []
        for _ in range(t):
            cycle_lengths = [c for c in range(3, n + 1, 2)]
            c = rng.choice(cycle_lengths)
            order = list(range(1, n + 1))
            rng.shuffle(order)
            cyc = order[:c]
            edges = [(cyc[i], cyc[(i + 1) % c]) for i in range(c)]
            placed = list(cyc)
            for v in order[c:]:
                edges.append((rng.choice(placed), v))
                placed.append(v)
            vecs = [GroupVec.make(n, mod, {u: a, v: a}) for u, v in edges]
            rng.shuffle(vecs)
            bases.append(vecs)
        fam = BasisFamily.make(n, mod, bases, SpaceKind.FULL)
    else:
        raise ValueError(f"unknown family style {style!r}")

    assert fam.shadow_count_size2() == ell, "generator produced wrong shadow count"
    return fam


def gen_zero_sum_family(p: int, n: int, t: int, seed: int) -> BasisFamily:
    """t linear bases of the zero-sum subspace of Z_p^n.

    Each basis is a random spanning tree whose edge {u, v} carries the column
    (a at u, -a at v) -- the only support-2 shape a zero-sum vector can have.
    """
    if n < 2:
        raise ValueError("the zero-sum subspace of Z_p^1 is trivial")
    mod = Modulus(p)
    mod.require_prime()
    rng = random.Random(seed)
    bases = []
    for _ in range(t):
        vecs = []
        for u, v in _attachment_tree(rng, n):
            a = rng.randrange(1, p)
            vecs.append(GroupVec.make(n, mod, {u: a, v: p - a}))
        rng.shuffle(vecs)
        bases.append(vecs)
    return BasisFamily.make(n, mod, bases, SpaceKind.ZERO_SUM)


def gen_multigraph(n: int, min_connectivity: int, seed: int) -> Multigraph:
    """Multigraph on n vertices with edge connectivity >= min_connectivity,
    built as a union of random Hamiltonian cycles (each adds 2 to the cut
    everywhere), verified and topped up until the bound holds."""
    if n < 2:
        raise ValueError("need at least two vertices")
    if min_connectivity < 1:
        raise ValueError("min_connectivity must be >= 1")
    rng = random.Random(seed)
    pairs: List[Tuple[int, int]] = []

    def add_cycle() -> None:
        order = list(range(1, n + 1))
        rng.shuffle(order)
        if n == 2:
            pairs.append((order[0], order[1]))
            pairs.append((order[0], order[1]))
        else:
            for i in range(n):
                pairs.append((order[i], order[(i + 1) % n]))

    for _ in range(-(-min_connectivity // 2)):
        add_cycle()
    g = Multigraph.from_pairs(n, pairs)
    rounds = 0
    while edge_connectivity(g) < min_connectivity:
        add_cycle()
        g = Multigraph.from_pairs(n, pairs)
        rounds += 1
        assert rounds <= 2 * min_connectivity + 4, "connectivity never reached"
    return g


def gen_dense_multigraph(n: int, min_avg_degree: int, seed: int) -> Multigraph:
    """Random multigraph with average degree >= min_avg_degree (uniform
    random endpoints, no loops).  Connectivity is whatever it is."""
    if n < 2:
        raise ValueError("need at least two vertices")
    rng = random.Random(seed)
    m = -(-min_avg_degree * n // 2) + rng.randrange(0, n)
    pairs = []
    for _ in range(m):
        u = rng.randrange(1, n + 1)
        v = rng.randrange(1, n + 1)
        while v == u:
            v = rng.randrange(1, n + 1)
        pairs.append((u, v))
    return Multigraph.from_pairs(n, pairs)


def gen_digraph(n: int, m: int, seed: int) -> Digraph:
    """Random digraph: no loops, parallel and anti-parallel arcs allowed."""
    if n < 2:
        raise ValueError("need at least two vertices")
    rng = random.Random(seed)
    arcs = []
    for _ in range(m):
        u = rng.randrange(1, n + 1)
        v = rng.randrange(1, n + 1)
        while v == u:
            v = rng.randrange(1, n + 1)
        arcs.append((u, v))
    return Digraph.from_pairs(n, arcs)


def gen_balanced_digraph(n: int, cycles: int, seed: int) -> Digraph:
    """Union of directed cycles over random vertex subsets, so every vertex
    has equal in- and out-degree.  Handy for flows that need boundary 0."""
    if n < 2:
        raise ValueError("need at least two vertices")
    rng = random.Random(seed)
    arcs: List[Tuple[int, int]] = []
    for _ in range(max(1, cycles)):
        size = rng.randrange(2, n + 1)
        order = rng.sample(range(1, n + 1), size)
        for i in range(size):
            arcs.append((order[i], order[(i + 1) % size]))
    return Digraph.from_pairs(n, arcs)


def gen_boundary(d: Digraph, k: int, seed: int) -> Boundary:
    """Boundary of a uniformly random Z_k flow on d, hence always valid."""
    rng = random.Random(seed)
    mod = Modulus(k)
    flow = FlowAssignment.of(
        {aid: rng.randrange(k) for aid, _, _ in d.arcs}, mod
    )
    return boundary_of_flow(d, flow)


def gen_boundary_graph(g: Multigraph, k: int, seed: int) -> Boundary:
    """Random valid Z_k boundary on a multigraph's vertex set."""
    rng = random.Random(seed)
    vals = {v: rng.randrange(k) for v in g.vertices}
    vs = sorted(g.vertices)
    total = sum(vals[v] for v in vs[:-1]) % k
    vals[vs[-1]] = (-total) % k
    return Boundary.of(vals, Modulus(k))


def gen_weights(g: Multigraph, k: int, seed: int) -> EdgeWeighting:
    """Random non-zero Z_k weights per edge."""
    rng = random.Random(seed)
    return EdgeWeighting.of(
        {eid: rng.randrange(1, k) for eid, _, _ in g.edges}, Modulus(k)
    )


def gen_sided_instance(
    n: int, m: int, seed: int
) -> Tuple[Multigraph, Dict[int, int]]:
    """Multigraph plus a per-edge choice of the endpoint that should land in
    side 1 -- the input shape of the derandomized partition."""
    g = gen_dense_multigraph(n, max(1, 2 * m // n), seed)
    rng = random.Random(seed + 1)
    side1_of = {}
    for eid, u, v in g.edges:
        side1_of[eid] = u if rng.random() < 0.5 else v
    return g, side1_of


def gen_bipartite(
    n1: int, n2: int, m: int, seed: int
) -> Tuple[Multigraph, Tuple[int, ...], Tuple[int, ...]]:
    """Random bipartite multigraph; parts are 1..n1 and n1+1..n1+n2."""
    rng = random.Random(seed)
    part1 = tuple(range(1, n1 + 1))
    part2 = tuple(range(n1 + 1, n1 + n2 + 1))
    pairs = []
    for _ in range(m):
        pairs.append((rng.choice(part1), rng.choice(part2)))
    return Multigraph.from_pairs(n1 + n2, pairs), part1, part2


def gen_balanced_prescription(
    part1: Sequence[int], part2: Sequence[int], k: int, seed: int
) -> Dict[int, int]:
    """Random degree prescription with equal part sums mod k."""
    rng = random.Random(seed)
    f = {v: rng.randrange(k) for v in list(part1) + list(part2)}
    s1 = sum(f[v] for v in part1) % k
    s2 = sum(f[v] for v in part2) % k
    last = part2[-1]
    f[last] = (f[last] + s1 - s2) % k
    return f
