"""Constructive subset-sum representation from families of linear bases whose
vectors have support at most 2.

Given enough bases, the union of their columns is an additive basis: every
target is a sum of some subset of columns.  ``represent`` finds such a subset
constructively, peeling one dimension at a time:

* ``BASE_CASE`` -- in dimension 1 the columns are non-zero scalars; with at
  least p - 1 of them every residue is a subset sum (and a small DP finds the
  witness either way).
* ``I_VECTOR`` -- when some coordinate i owns at least p - 1 single-support
  columns, solve the instance with coordinate i deleted, then patch
  coordinate i using those i-columns alone.
* ``SHADOW_GRAPH`` -- when one shadow class {a1, a2} is large, view its
  columns as edges on the coordinates, keep a quarter of them consistently
  sided by a derandomized bipartition, extract a highly edge-connected core,
  rescale its two sides so those columns become (1, -1) edge vectors,
  contract the core to a point, solve the contracted instance, and settle the
  residue on the core as a modular degree prescription on a bipartite graph.

Every step is checked against explicit preconditions at run time; when a step
does not apply (or an inner reduction comes back empty-handed) the level
falls back to the exact oracle, so answers are always exact -- the structured
routes are the object of study, not a source of optimism.  Each chosen column
is reported by provenance: (basis index, column index) into the input family.

Threshold helpers state how many bases make the structured guarantee kick in;
they are arithmetic only and are never assumed by the solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from . import subset_oracle
from .errors import (
    DimensionMismatch,
    Infeasible,
    TargetNotZeroSum,
    UnsupportedSupportSize,
    WrongSpaceKind,
)
from .field import cd_represent
from .graph import Multigraph, choose_partition, mader_extract
from .zpn_linear import (
    BasisFamily,
    GroupVec,
    Shadow,
    SpaceKind,
    contract_vec,
    drop_last_row,
    extract_basis_columns,
    is_linear_basis,
    scale_vec,
    sum_vecs,
)

Tag = Tuple[int, int]
_Items = List[List[Tuple[GroupVec, Tag]]]


class Route(str, Enum):
    BASE_CASE = "base_case"
    I_VECTOR = "i_vector"
    SHADOW_GRAPH = "shadow_graph"
    ORACLE = "oracle"


@dataclass(frozen=True)
class TraceStep:
    """One level of the recursion: the route taken and its parameters."""

    route: Route
    dim: int
    detail: Dict[str, object] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"route": self.route.value, "dim": self.dim, "detail": self.detail}


@dataclass(frozen=True)
class RepresentResult:
    """A subset of family columns summing to the target, with the recursion
    trace.  ``subset`` holds (basis index, column index) pairs, sorted."""

    subset: Tuple[Tag, ...]
    trace: Tuple[TraceStep, ...]

    @property
    def route(self) -> Route:
        return self.trace[0].route

    @property
    def used_fallback(self) -> bool:
        return any(step.route is Route.ORACLE for step in self.trace)

    def to_json_dict(self) -> dict:
        return {
            "subset": [list(t) for t in self.subset],
            "trace": [s.to_json_dict() for s in self.trace],
        }


def mader_degree(p: int) -> int:
    """Connectivity parameter 3p - 4 used by the core extraction."""
    if p < 2:
        raise ValueError("p must be >= 2")
    return 3 * p - 4


def shadow_class_floor(p: int, dim: int) -> int:
    """Class size 8(3p-4)n that lets the shadow-graph step run in dim n."""
    return 8 * mader_degree(p) * dim


def bases_required(p: int, shadow_classes: int) -> int:
    """Bases sufficient for an additive basis: 8*ell*(3p-4) + p - 2, where
    ell is the number of distinct shadows among the support-2 columns."""
    if shadow_classes < 0:
        raise ValueError("shadow class count cannot be negative")
    return 8 * shadow_classes * mader_degree(p) + p - 2


def bases_required_any_shadow(p: int) -> int:
    """The worst case of :func:`bases_required`: all p(p-1)/2 shadows present."""
    return bases_required(p, p * (p - 1) // 2)


def bases_required_zero_sum(p: int) -> int:
    """Bases of the zero-sum subspace sufficient for an additive basis of it:
    4(p-1)(3p-4) + p - 2 (zero-sum support-2 vectors all look like (a, -a))."""
    return 4 * (p - 1) * mader_degree(p) + p - 2


def required_bases_for(fam: BasisFamily) -> int:
    """The threshold matching the family's own kind and shadow diversity."""
    p = fam.modulus.value
    if fam.space_kind is SpaceKind.ZERO_SUM:
        return bases_required_zero_sum(p)
    return bases_required(p, fam.shadow_count_size2())


def meets_threshold(fam: BasisFamily) -> bool:
    return fam.t >= required_bases_for(fam)


def _flat(items: _Items) -> List[Tuple[GroupVec, Tag]]:
    return [entry for basis in items for entry in basis]


def _base_case(
    items: _Items, target: GroupVec
) -> Union[Tuple[List[Tag], TraceStep], Infeasible]:
    cols = _flat(items)
    values = [v.entry(1) for v, _ in cols]
    picked = cd_represent(values, target.entry(1), target.modulus)
    if isinstance(picked, Infeasible):
        return picked
    step = TraceStep(Route.BASE_CASE, 1, {"columns": len(cols)})
    return [cols[i][1] for i in picked], step


def _i_vector_candidate(
    items: _Items, n: int, p: int
) -> Optional[Tuple[int, List[Tuple[GroupVec, Tag]]]]:
    """First coordinate owning >= p - 1 single-support columns, with them."""
    per_coord: Dict[int, List[Tuple[GroupVec, Tag]]] = {}
    for v, tag in _flat(items):
        if v.support_size == 1:
            per_coord.setdefault(v.support()[0], []).append((v, tag))
    for i in range(1, n + 1):
        if len(per_coord.get(i, ())) >= p - 1:
            return i, per_coord[i]
    return None


def _drop_coordinate(items: _Items, n: int, i: int) -> _Items:
    """Family with coordinate i deleted and the i-columns removed.

    A linear basis holds at most one i-column (two would be parallel); the
    other columns project onto a spanning set one dimension down, so the
    earliest n-1 independent ones form a basis again.
    """
    out: _Items = []
    for basis in items:
        kept = [
            (v.drop_coord(i), tag)
            for v, tag in basis
            if not (v.support_size == 1 and v.support()[0] == i)
        ]
        assert len(kept) >= n - 1, "basis held two parallel i-columns"
        if len(kept) > n - 1:
            idx = extract_basis_columns([v for v, _ in kept], n - 1)
            kept = [kept[j] for j in idx]
        assert is_linear_basis([v for v, _ in kept], n - 1)
        out.append(kept)
    return out


def _shadow_candidate(
    items: _Items, n: int, p: int
) -> Optional[Tuple[Shadow, List[Tuple[GroupVec, Tag]]]]:
    """Largest shadow class among support-2 columns, if big enough to work."""
    classes: Dict[Shadow, List[Tuple[GroupVec, Tag]]] = {}
    for v, tag in _flat(items):
        if v.support_size == 2:
            classes.setdefault(v.shadow(), []).append((v, tag))
    if not classes:
        return None
    shadow = min(classes, key=lambda s: (-len(classes[s]), s.values))
    members = classes[shadow]
    if len(members) < shadow_class_floor(p, n):
        return None
    return shadow, members


@dataclass(frozen=True)
class _ShadowPlan:
    """Everything the shadow-graph step fixes before recursing."""

    shadow: Shadow
    members: List[Tuple[GroupVec, Tag]]
    core: Tuple[int, ...]
    core1: Tuple[int, ...]
    core2: Tuple[int, ...]
    core_graph: Multigraph
    core_members: Dict[int, Tuple[GroupVec, Tag]]


def _plan_shadow_step(
    items: _Items, n: int, p: int
) -> Optional[_ShadowPlan]:
    cand = _shadow_candidate(items, n, p)
    if cand is None:
        return None
    shadow, members = cand
    a1 = shadow.values[0]
    pairs = []
    side1_of = {}
    for eidx, (v, _tag) in enumerate(members):
        i, j = v.support()
        pairs.append((eidx, i, j))
        side1_of[eidx] = i if v.entry(i) == a1 else j
    sg = Multigraph(tuple(range(1, n + 1)), tuple(pairs))
    cut = choose_partition(sg, side1_of)
    sel = set(cut.selected_edges)
    sel_graph = Multigraph(sg.vertices, tuple(e for e in sg.edges if e[0] in sel))
    core = mader_extract(sel_graph, mader_degree(p))
    if core is None or len(core) < 2:
        return None
    core_graph = sel_graph.induced(core)
    if not core_graph.edges:
        return None
    core1 = tuple(sorted(core & cut.side1))
    core2 = tuple(sorted(core & cut.side2))
    if not core1 or not core2:
        return None
    core_members = {eidx: members[eidx] for eidx, _, _ in core_graph.edges}
    return _ShadowPlan(
        shadow, members, tuple(sorted(core)), core1, core2, core_graph, core_members
    )


def _contract_items(
    items: _Items, plan: _ShadowPlan, n: int, a1: int, a2: int
) -> Tuple[_Items, Dict[Tag, GroupVec]]:
    """Scale the core's two sides, drop the core columns, contract the core.

    Returns the new family (tags preserved) plus tag -> scaled vector for the
    repair arithmetic.  Scaled core columns are exactly (1, -1) on their edge.
    """
    consumed = {tag for _, tag in plan.core_members.values()}
    scaled_of: Dict[Tag, GroupVec] = {}
    rows = plan.core
    new_items: _Items = []
    m = n - len(rows) + 1
    for basis in items:
        cand = []
        for v, tag in basis:
            sv = scale_vec(v, plan.core1, plan.core2, a1, a2)
            scaled_of[tag] = sv
            if tag in consumed:
                continue
            cv = contract_vec(sv, rows)
            if cv.is_zero():
                continue
            cand.append((cv, tag))
        idx = extract_basis_columns([v for v, _ in cand], m)
        assert len(idx) == m, "contracted basis lost rank"
        new_items.append([cand[j] for j in idx])
    return new_items, scaled_of


def _shadow_step(
    items: _Items,
    n: int,
    target: GroupVec,
    plan: _ShadowPlan,
    prefer: Optional[Route],
    allow_fallback: bool,
    trace: List[TraceStep],
) -> Union[List[Tag], Infeasible]:
    from .flows import solve_prescribed_degrees

    mod = target.modulus
    p = mod.value
    a1, a2 = plan.shadow.values
    new_items, scaled_of = _contract_items(items, plan, n, a1, a2)
    for _eidx, (v, tag) in plan.core_members.items():
        i, j = v.support()
        sv = scaled_of[tag]
        hi = i if i in plan.core1 else j
        lo = j if hi == i else i
        assert sv.entry(hi) == 1 and sv.entry(lo) == p - 1, "core column not (1,-1)"

    scaled_target = scale_vec(target, plan.core1, plan.core2, a1, a2)
    sub_target = contract_vec(scaled_target, plan.core)
    sub = _represent_rec(new_items, n - len(plan.core) + 1, sub_target,
                         prefer, allow_fallback, trace)
    if isinstance(sub, Infeasible):
        return sub

    got = sum_vecs((scaled_of[tag] for tag in sub), n, mod)
    delta = scaled_target - got
    core_set = set(plan.core)
    assert all(i in core_set for i in delta.support()), "residue leaked off the core"
    assert delta.coord_sum() == 0, "core residue must be balanced"

    want = {i: delta.entry(i) % p for i in plan.core1}
    want.update({j: (-delta.entry(j)) % p for j in plan.core2})
    repair = solve_prescribed_degrees(
        plan.core_graph, plan.core1, plan.core2, p, want
    )
    if isinstance(repair, Infeasible):
        return Infeasible(reason="core degree prescription failed: " + repair.reason)
    chosen_core = [plan.core_members[eidx][1] for eidx in repair]
    total = got + sum_vecs((scaled_of[t] for t in chosen_core), n, mod)
    assert total == scaled_target, "shadow step failed verification"
    return list(sub) + chosen_core


def _oracle_step(
    items: _Items, target: GroupVec
) -> Union[Tuple[List[Tag], TraceStep], Infeasible]:
    cols = _flat(items)
    picked = subset_oracle.subset_sum([v for v, _ in cols], target)
    if isinstance(picked, Infeasible):
        return Infeasible(
            reason="exhaustive oracle: " + picked.reason
        )
    step = TraceStep(Route.ORACLE, target.dim, {"columns": len(cols)})
    return [cols[i][1] for i in picked], step


def _represent_rec(
    items: _Items,
    n: int,
    target: GroupVec,
    prefer: Optional[Route],
    allow_fallback: bool,
    trace: List[TraceStep],
) -> Union[List[Tag], Infeasible]:
    p = target.modulus.value
    if n == 1:
        res = _base_case(items, target)
        if isinstance(res, Infeasible):
            return res
        tags, step = res
        trace.append(step)
        return tags

    order: List[Route] = [Route.I_VECTOR, Route.SHADOW_GRAPH]
    if prefer in order:
        order.remove(prefer)
        order.insert(0, prefer)
    if prefer is Route.ORACLE:
        order = []

    for route in order:
        if route is Route.I_VECTOR:
            cand = _i_vector_candidate(items, n, p)
            if cand is None:
                continue
            i, ivecs = cand
            mark = len(trace)
            trace.append(
                TraceStep(Route.I_VECTOR, n, {"coordinate": i, "columns": len(ivecs)})
            )
            sub = _represent_rec(
                _drop_coordinate(items, n, i), n - 1, target.drop_coord(i),
                prefer, allow_fallback, trace,
            )
            if isinstance(sub, Infeasible):
                del trace[mark:]
                continue
            by_tag = {tag: v for basis in items for v, tag in basis}
            got = sum_vecs((by_tag[tag] for tag in sub), n, target.modulus)
            need = (target.entry(i) - got.entry(i)) % p
            patch = cd_represent([v.entry(i) for v, _ in ivecs], need, target.modulus)
            if isinstance(patch, Infeasible):
                del trace[mark:]
                continue
            tags = list(sub) + [ivecs[j][1] for j in patch]
            assert sum_vecs(
                (by_tag[tag] for tag in tags), n, target.modulus
            ) == target, "i-vector step failed verification"
            return tags
        else:
            if p == 2:
                continue
            plan = _plan_shadow_step(items, n, p)
            if plan is None:
                continue
            mark = len(trace)
            trace.append(
                TraceStep(
                    Route.SHADOW_GRAPH,
                    n,
                    {
                        "shadow": list(plan.shadow.values),
                        "class_size": len(plan.members),
                        "core": [int(v) for v in plan.core],
                        "core_columns": len(plan.core_members),
                    },
                )
            )
            res = _shadow_step(items, n, target, plan, prefer, allow_fallback, trace)
            if isinstance(res, Infeasible):
                del trace[mark:]
                continue
            return res

    if not allow_fallback:
        return Infeasible(reason="no structured route applies and fallback is off")
    res = _oracle_step(items, target)
    if isinstance(res, Infeasible):
        return res
    tags, step = res
    trace.append(step)
    return tags


def represent(
    fam: BasisFamily,
    target: GroupVec,
    *,
    prefer: Optional[Route] = None,
    allow_fallback: bool = True,
) -> Union[RepresentResult, Infeasible]:
    """A subset of the family's columns summing to ``target``.

    The family must be FULL-kind with all supports of size at most 2; the
    target must live in the same group.  ``prefer`` moves one route to the
    front of the per-level order (or, for ``Route.ORACLE``, answers with the
    exact oracle outright); ``allow_fallback=False`` reports Infeasible
    instead of consulting the oracle when no structured route applies --
    useful for checking that a family is handled structurally, since an
    actually-infeasible target also comes back Infeasible from the oracle.
    """
    if fam.space_kind is not SpaceKind.FULL:
        raise WrongSpaceKind("represent works on FULL families; "
                             "use represent_zero_sum for ZERO_SUM ones")
    fam.modulus.require_prime()
    if target.dim != fam.dim or target.modulus != fam.modulus:
        raise DimensionMismatch("target lives in a different group")
    worst = fam.max_support_size()
    if worst > 2:
        raise UnsupportedSupportSize(
            f"columns must have support <= 2, found {worst}"
        )
    items: _Items = [
        [(v, (s, c)) for c, v in enumerate(basis)] for s, basis in enumerate(fam.bases)
    ]
    trace: List[TraceStep] = []
    res = _represent_rec(items, fam.dim, target, prefer, allow_fallback, trace)
    if isinstance(res, Infeasible):
        return res
    subset = tuple(sorted(res))
    assert len(set(subset)) == len(subset), "a column was used twice"
    assert (
        sum_vecs((fam.vector_at(s, c) for s, c in subset), fam.dim, fam.modulus)
        == target
    ), "represent failed verification"
    return RepresentResult(subset, tuple(trace))


def represent_zero_sum(
    fam: BasisFamily,
    target: GroupVec,
    *,
    prefer: Optional[Route] = None,
    allow_fallback: bool = True,
) -> Union[RepresentResult, Infeasible]:
    """Zero-sum variant: project away the last coordinate (an isomorphism of
    the zero-sum subspace onto the full space one dimension down), represent
    there, and read the chosen columns back off the original family."""
    if fam.space_kind is not SpaceKind.ZERO_SUM:
        raise WrongSpaceKind("represent_zero_sum works on ZERO_SUM families")
    if target.dim != fam.dim or target.modulus != fam.modulus:
        raise DimensionMismatch("target lives in a different group")
    if not target.is_zero_sum():
        raise TargetNotZeroSum(
            f"coordinate sum is {target.coord_sum()}, not 0"
        )
    res = represent(
        drop_last_row(fam),
        target.drop_coord(fam.dim),
        prefer=prefer,
        allow_fallback=allow_fallback,
    )
    if isinstance(res, Infeasible):
        return res
    assert (
        sum_vecs((fam.vector_at(s, c) for s, c in res.subset), fam.dim, fam.modulus)
        == target
    ), "zero-sum replay failed verification"
    return res


def replay(fam: BasisFamily, target: GroupVec, result: RepresentResult) -> bool:
    """True iff the recorded subset really sums to the target in this family."""
    try:
        total = sum_vecs(
            (fam.vector_at(s, c) for s, c in result.subset), fam.dim, fam.modulus
        )
    except (IndexError, DimensionMismatch):
        return False
    return total == target
