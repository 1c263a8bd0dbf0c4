"""Loopless multigraphs with stable edge ids, and the graph machinery behind
the basis pipeline: exact edge connectivity, extraction of highly
edge-connected induced subgraphs, a derandomized bipartition, and
spanning-tree packing with violating-partition certificates.

Everything here is exact and deterministic; sizes are desk scale.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from .errors import Infeasible


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; ``edges`` holds (edge id, u, v) triples.

    Edge ids are unique and survive induced subgraphs and contractions, which
    is what lets callers map solved sub-instances back.
    Loops are forbidden; parallel edges are the point.
    """

    vertices: Tuple[int, ...]
    edges: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertices")
        seen = set()
        for eid, u, v in self.edges:
            if eid in seen:
                raise ValueError(f"duplicate edge id {eid}")
            seen.add(eid)
            if u == v:
                raise ValueError(f"edge {eid} is a loop at {u}")
            if u not in vs or v not in vs:
                raise ValueError(f"edge {eid} touches a missing vertex")
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))

    @classmethod
    def from_pairs(
        cls, vertices: Union[int, Iterable[int]], pairs: Iterable[Tuple[int, int]]
    ) -> "Multigraph":
        if isinstance(vertices, int):
            vertices = range(1, vertices + 1)
        return cls(tuple(vertices), tuple((i, u, v) for i, (u, v) in enumerate(pairs)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_by_id(self) -> Dict[int, Tuple[int, int]]:
        return {eid: (u, v) for eid, u, v in self.edges}

    def degrees(self) -> Dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for _, u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def avg_degree(self) -> float:
        return 2 * self.m / self.n if self.n else 0.0

    def incident(self) -> Dict[int, List[Tuple[int, int]]]:
        """vertex -> list of (edge id, other endpoint)."""
        inc: Dict[int, List[Tuple[int, int]]] = {v: [] for v in self.vertices}
        for eid, u, v in self.edges:
            inc[u].append((eid, v))
            inc[v].append((eid, u))
        return inc

    def induced(self, keep: Iterable[int]) -> "Multigraph":
        ks = frozenset(keep)
        return Multigraph(
            tuple(v for v in self.vertices if v in ks),
            tuple((e, u, v) for e, u, v in self.edges if u in ks and v in ks),
        )

    def contract(self, merge: Iterable[int]) -> Tuple["Multigraph", int]:
        """Merge a vertex set into one vertex (its minimum id); edges inside the
        set disappear, all other edge ids survive.  Returns (graph, new vertex)."""
        ms = frozenset(merge)
        anchor = min(ms)
        vs = tuple(v for v in self.vertices if v not in ms or v == anchor)
        edges = []
        for eid, u, v in self.edges:
            uu = anchor if u in ms else u
            vv = anchor if v in ms else v
            if uu != vv:
                edges.append((eid, uu, vv))
        return Multigraph(vs, tuple(edges)), anchor

    def components(self) -> List[FrozenSet[int]]:
        inc = self.incident()
        seen: Set[int] = set()
        out = []
        for start in self.vertices:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            seen.add(start)
            while queue:
                x = queue.popleft()
                for _, y in inc[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.add(y)
                        queue.append(y)
            out.append(frozenset(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1 if self.n else True

    def cross_edge_count(self, parts: Sequence[FrozenSet[int]]) -> int:
        where = {}
        for i, part in enumerate(parts):
            for v in part:
                where[v] = i
        return sum(1 for _, u, v in self.edges if where[u] != where[v])


class _Dinic:
    """Max flow on a small capacitated digraph (adjacency-list residual graph)."""

    def __init__(self, nodes: Iterable[int]):
        self.index = {v: i for i, v in enumerate(nodes)}
        self.adj: List[List[int]] = [[] for _ in self.index]
        self.to: List[int] = []
        self.cap: List[int] = []

    def add(self, u: int, v: int, c: int) -> None:
        ui, vi = self.index[u], self.index[v]
        self.adj[ui].append(len(self.to))
        self.to.append(vi)
        self.cap.append(c)
        self.adj[vi].append(len(self.to))
        self.to.append(ui)
        self.cap.append(0)

    def add_undirected(self, u: int, v: int, c: int) -> None:
        # one residual pair with capacity c both ways models an undirected edge
        ui, vi = self.index[u], self.index[v]
        self.adj[ui].append(len(self.to))
        self.to.append(vi)
        self.cap.append(c)
        self.adj[vi].append(len(self.to))
        self.to.append(ui)
        self.cap.append(c)

    def max_flow(self, s: int, t: int) -> int:
        si, ti = self.index[s], self.index[t]
        flow = 0
        n = len(self.adj)
        while True:
            level = [-1] * n
            level[si] = 0
            queue = deque([si])
            while queue:
                x = queue.popleft()
                for a in self.adj[x]:
                    if self.cap[a] > 0 and level[self.to[a]] < 0:
                        level[self.to[a]] = level[x] + 1
                        queue.append(self.to[a])
            if level[ti] < 0:
                return flow
            it = [0] * n

            def dfs(x: int, pushed: int) -> int:
                if x == ti:
                    return pushed
                while it[x] < len(self.adj[x]):
                    a = self.adj[x][it[x]]
                    y = self.to[a]
                    if self.cap[a] > 0 and level[y] == level[x] + 1:
                        got = dfs(y, min(pushed, self.cap[a]))
                        if got:
                            self.cap[a] -= got
                            self.cap[a ^ 1] += got
                            return got
                    it[x] += 1
                return 0

            while True:
                pushed = dfs(si, 1 << 60)
                if not pushed:
                    break
                flow += pushed

    def reachable_from(self, s: int) -> Set[int]:
        si = self.index[s]
        seen = {si}
        queue = deque([si])
        while queue:
            x = queue.popleft()
            for a in self.adj[x]:
                if self.cap[a] > 0 and self.to[a] not in seen:
                    seen.add(self.to[a])
                    queue.append(self.to[a])
        rev = {i: v for v, i in self.index.items()}
        return {rev[i] for i in seen}


def _capacity_pairs(g: Multigraph) -> Dict[Tuple[int, int], int]:
    caps: Dict[Tuple[int, int], int] = {}
    for _, u, v in g.edges:
        key = (u, v) if u < v else (v, u)
        caps[key] = caps.get(key, 0) + 1
    return caps


def _flow_net(g: Multigraph) -> _Dinic:
    net = _Dinic(g.vertices)
    for (u, v), c in sorted(_capacity_pairs(g).items()):
        net.add_undirected(u, v, c)
    return net


def edge_connectivity(g: Multigraph) -> int:
    """Exact global edge connectivity (min-cut) of a multigraph.

    Deterministic max-flow sweep: fix the smallest vertex as root and take the
    minimum s-t cut towards every other vertex.  Returns 0 when disconnected.
    """
    if g.n < 2:
        raise ValueError("edge connectivity needs at least two vertices")
    if not g.is_connected():
        return 0
    root = g.vertices[0]
    best = None
    for t in g.vertices[1:]:
        net = _flow_net(g)
        val = net.max_flow(root, t)
        best = val if best is None else min(best, val)
        if best == 0:
            break
    return int(best)


def global_min_cut(g: Multigraph) -> Tuple[int, FrozenSet[int]]:
    """(cut value, one side of a minimum cut containing the root).

    Same sweep as :func:`edge_connectivity`; among equal-value cuts the one for
    the smallest sink wins, so the output is deterministic.
    """
    if g.n < 2:
        raise ValueError("min cut needs at least two vertices")
    comps = g.components()
    if len(comps) > 1:
        side = min(comps, key=lambda c: min(c))
        return 0, side
    root = g.vertices[0]
    best_val: Optional[int] = None
    best_side: Optional[FrozenSet[int]] = None
    for t in g.vertices[1:]:
        net = _flow_net(g)
        val = net.max_flow(root, t)
        if best_val is None or val < best_val:
            best_val = val
            side = net.reachable_from(root)
            best_side = frozenset(side)
    assert best_val is not None and best_side is not None
    return int(best_val), best_side


def _density_ok(g: Multigraph, sub: FrozenSet[int], k: int) -> bool:
    """The certificate kept through the extraction: e(S) >= 2k(|S|-1) + 1."""
    if len(sub) < 2:
        return False
    e = sum(1 for _, u, v in g.edges if u in sub and v in sub)
    return e >= 2 * k * (len(sub) - 1) + 1


def mader_extract(g: Multigraph, k: int) -> Optional[FrozenSet[int]]:
    """A vertex set X (|X| >= 2) with G[X] (k+1)-edge-connected, or None.

    Procedure: trim vertices of degree < 2k, then either return the current
    vertex set or descend into one side of a minimum cut (of size <= k).  Both
    steps preserve the density e(S) >= 2k(|S|-1)+1, which holds initially
    whenever the average degree is >= 4k -- that is the regime with a success
    guarantee.  Among cut sides the one satisfying the density bound is taken
    (both: larger total degree, then the side holding the smallest vertex id);
    below the threshold this is heuristic and None is possible.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    X = frozenset(g.vertices)
    while True:
        if len(X) <= 1:
            return None
        h = g.induced(X)
        deg = h.degrees()
        trim = {v for v in X if deg[v] < 2 * k}
        if trim:
            X = frozenset(X - trim)
            continue
        val, side = global_min_cut(h)
        if val >= k + 1:
            return X
        X = _pick_cut_side(h, side, frozenset(X - side), k)


def _pick_cut_side(
    h: Multigraph, a: FrozenSet[int], b: FrozenSet[int], k: int
) -> FrozenSet[int]:
    deg = h.degrees()
    ok_a, ok_b = _density_ok(h, a, k), _density_ok(h, b, k)
    if ok_a != ok_b:
        return a if ok_a else b
    da = sum(deg[v] for v in a)
    db = sum(deg[v] for v in b)
    if da != db:
        return a if da > db else b
    return a if min(a) < min(b) else b


@dataclass(frozen=True)
class PartitionCut:
    """Result of :func:`choose_partition`: the two sides and the ids of the
    edges that ended up correctly sided."""

    side1: FrozenSet[int]
    side2: FrozenSet[int]
    selected_edges: Tuple[int, ...]


def choose_partition(g: Multigraph, side1_of: Mapping[int, int]) -> PartitionCut:
    """Deterministic bipartition keeping at least ceil(|E|/4) edges correct.

    Each edge names the endpoint it wants in side 1 (the other endpoint must
    land in side 2).  Vertices are assigned in increasing id order by
    conditional expectations over the uniform random partition, under which
    each edge is correct with probability 1/4; the integral count therefore
    ends at >= ceil(|E|/4).  Ties go to side 1.
    """
    ebi = g.edge_by_id()
    for eid, want in side1_of.items():
        u, v = ebi[eid]
        if want not in (u, v):
            raise ValueError(f"edge {eid} does not touch requested vertex {want}")
    if set(side1_of) != set(ebi):
        raise ValueError("every edge needs its side-1 endpoint specified")

    assign: Dict[int, int] = {}
    inc = g.incident()

    def weight(eid: int) -> int:
        """4 x probability the edge ends correct, given current assignments."""
        u, v = ebi[eid]
        w1 = side1_of[eid]
        w2 = v if w1 == u else u
        s1, s2 = assign.get(w1), assign.get(w2)
        if s1 is None and s2 is None:
            return 1
        if s1 is not None and s2 is not None:
            return 4 if (s1, s2) == (1, 2) else 0
        if s1 is not None:
            return 2 if s1 == 1 else 0
        return 2 if s2 == 2 else 0

    for v in g.vertices:
        gains = {}
        for choice in (1, 2):
            assign[v] = choice
            gains[choice] = sum(weight(eid) for eid, _ in inc[v])
        assign[v] = 1 if gains[1] >= gains[2] else 2

    side1 = frozenset(v for v in g.vertices if assign[v] == 1)
    side2 = frozenset(g.vertices) - side1
    selected = tuple(
        eid
        for eid, _, _ in g.edges
        if weight(eid) == 4
    )
    need = -(-g.m // 4)
    assert len(selected) >= need, "derandomized bound violated"
    return PartitionCut(side1, side2, selected)


def _forest_path(
    adj: Dict[int, List[Tuple[int, int]]], a: int, b: int
) -> Optional[List[int]]:
    """Edge ids along the tree path a..b inside one forest, None if separated."""
    if a == b:
        return []
    prev: Dict[int, Tuple[int, int]] = {a: (0, a)}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for eid, y in adj[x]:
            if y not in prev:
                prev[y] = (eid, x)
                if y == b:
                    path = []
                    cur = b
                    while cur != a:
                        eid2, par = prev[cur]
                        path.append(eid2)
                        cur = par
                    return path
                queue.append(y)
    return None


class _ForestPack:
    """Mutable state for the matroid-union style tree packing."""

    def __init__(self, g: Multigraph, count: int):
        self.g = g
        self.count = count
        self.ebi = g.edge_by_id()
        self.member: Dict[int, int] = {}  # edge id -> forest index
        self.adj: List[Dict[int, List[Tuple[int, int]]]] = [
            {v: [] for v in g.vertices} for _ in range(count)
        ]

    def _insert(self, fi: int, eid: int) -> None:
        u, v = self.ebi[eid]
        self.adj[fi][u].append((eid, v))
        self.adj[fi][v].append((eid, u))
        self.member[eid] = fi

    def _remove(self, fi: int, eid: int) -> None:
        u, v = self.ebi[eid]
        self.adj[fi][u] = [(e, y) for e, y in self.adj[fi][u] if e != eid]
        self.adj[fi][v] = [(e, y) for e, y in self.adj[fi][v] if e != eid]
        del self.member[eid]

    def place(self, e0: int, mutate: bool = True) -> Tuple[bool, Set[int]]:
        """Try to work ``e0`` into the forests via exchange augmentation.

        Breadth-first labeling: processing edge g against forest i either finds
        its endpoints separated (augment along the label chain) or labels the
        tree path edges for later processing.  Returns (success, labeled set).
        """
        label: Dict[int, Optional[Tuple[int, int]]] = {e0: None}
        queue = deque([e0])
        while queue:
            ge = queue.popleft()
            gu, gv = self.ebi[ge]
            for fi in range(self.count):
                path = _forest_path(self.adj[fi], gu, gv)
                if path is None:
                    if not mutate:
                        return True, set(label)
                    cur, dest = ge, fi
                    while True:
                        parent = label[cur]
                        if parent is None:
                            self._insert(dest, cur)
                            break
                        pe, pf = parent
                        self._remove(pf, cur)
                        self._insert(dest, cur)
                        cur, dest = pe, pf
                    self._check()
                    return True, set(label)
                for fe in path:
                    if fe not in label:
                        label[fe] = (ge, fi)
                        queue.append(fe)
        return False, set(label)

    def _check(self) -> None:
        """Forests must stay acyclic and edge-disjoint after every swap chain."""
        seen: Set[int] = set()
        for fi in range(self.count):
            edges = {e for lst in self.adj[fi].values() for e, _ in lst}
            assert not (edges & seen), "forests share an edge"
            seen |= edges
            parent: Dict[int, int] = {}

            def find(x: int) -> int:
                while parent.get(x, x) != x:
                    parent[x] = parent.get(parent[x], parent[x])
                    x = parent[x]
                return x

            for eid in sorted(edges):
                u, v = self.ebi[eid]
                ru, rv = find(u), find(v)
                assert ru != rv, "cycle inside a forest"
                parent[ru] = rv

    def forests(self) -> List[List[int]]:
        out: List[List[int]] = [[] for _ in range(self.count)]
        for eid, fi in self.member.items():
            out[fi].append(eid)
        return [sorted(f) for f in out]


def _violating_partition_candidates(
    g: Multigraph, labeled: Set[int]
) -> List[Tuple[FrozenSet[int], ...]]:
    singletons = tuple(frozenset({v}) for v in g.vertices)
    cands = [singletons]
    if labeled:
        sub = Multigraph(
            g.vertices, tuple(e for e in g.edges if e[0] in labeled)
        )
        cands.append(tuple(sub.components()))
    return cands


def spanning_tree_packing(
    g: Multigraph, count: int
) -> Union[List[List[int]], Infeasible]:
    """``count`` pairwise edge-disjoint spanning trees (lists of edge ids), or
    Infeasible carrying a violating partition P with
    cross(P) < count * (|P| - 1) as certificate.

    Greedy matroid-union augmentation; the certificate, when needed, comes from
    the components of the edges labeled by the failed augmentation searches
    (isolated vertices count as singleton parts).
    """
    if count <= 0:
        return []
    if g.n == 0:
        return [[] for _ in range(count)]
    pack = _ForestPack(g, count)
    failed = []
    for eid, _, _ in g.edges:
        ok, _ = pack.place(eid)
        if not ok:
            failed.append(eid)
    forests = pack.forests()
    if all(len(f) == g.n - 1 for f in forests):
        for f in forests:
            sub = Multigraph(g.vertices, tuple(e for e in g.edges if e[0] in set(f)))
            assert sub.is_connected() and sub.m == g.n - 1
        return forests

    labeled: Set[int] = set()
    for eid in failed:
        ok, lab = pack.place(eid, mutate=False)
        assert not ok, "edge became placeable after the pass ended"
        labeled |= lab
    for parts in _violating_partition_candidates(g, labeled):
        if len(parts) > 1 and g.cross_edge_count(parts) < count * (len(parts) - 1):
            return Infeasible(
                reason=f"no {count} edge-disjoint spanning trees",
                certificate=parts,
            )
    # provably unreachable above; exhaustive fallback for small graphs keeps
    # the certificate promise even if the derivation has a blind spot
    for parts in _all_partitions(g.vertices):
        if len(parts) > 1 and g.cross_edge_count(parts) < count * (len(parts) - 1):
            return Infeasible(
                reason=f"no {count} edge-disjoint spanning trees",
                certificate=parts,
            )
    raise AssertionError("packing failed but no violating partition exists")


def _all_partitions(items: Sequence[int]):
    if len(items) > 12:
        raise AssertionError("partition enumeration capped at 12 vertices")
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for parts in _all_partitions(rest):
        for i in range(len(parts)):
            yield parts[:i] + (parts[i] | {first},) + parts[i + 1 :]
        yield parts + (frozenset({first}),)
