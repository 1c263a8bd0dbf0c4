"""Sparse vectors over Z_p^n, shadows, linear bases, and the row transforms
(scaling, contraction, last-row deletion) used by the basis-construction
pipeline.

Coordinates are 1-based.  A vector's *support* is its set of non-zero
coordinates; its *shadow* is the unordered multiset of its non-zero values.
The zero-sum subspace (all coordinates summing to 0) gets its own family kind
because bases of it have n-1 vectors rather than n.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    TooFewRows,
    WrongSpaceKind,
    ZeroScalar,
)
from .field import Modulus, ModulusLike, as_modulus, inverse_mod


@dataclass(frozen=True)
class GroupVec:
    """Element of Z_p^n with sparse storage: ``entries`` holds the non-zero
    coordinates as (index, value) pairs, sorted by index."""

    dim: int
    modulus: Modulus
    entries: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        m = self.modulus.value
        seen = set()
        norm = []
        for i, v in self.entries:
            if not 1 <= i <= self.dim:
                raise DimensionMismatch(f"coordinate {i} outside 1..{self.dim}")
            if i in seen:
                raise ValueError(f"duplicate coordinate {i}")
            seen.add(i)
            v %= m
            if v:
                norm.append((i, v))
        norm.sort()
        object.__setattr__(self, "entries", tuple(norm))

    @classmethod
    def make(
        cls,
        dim: int,
        modulus: ModulusLike,
        entries: Union[Mapping[int, int], Iterable[Tuple[int, int]]],
    ) -> "GroupVec":
        if isinstance(entries, Mapping):
            entries = entries.items()
        return cls(dim, as_modulus(modulus), tuple((int(i), int(v)) for i, v in entries))

    @classmethod
    def from_dense(cls, modulus: ModulusLike, values: Sequence[int]) -> "GroupVec":
        return cls.make(len(values), modulus, {i + 1: v for i, v in enumerate(values)})

    def to_dense(self) -> Tuple[int, ...]:
        out = [0] * self.dim
        for i, v in self.entries:
            out[i - 1] = v
        return tuple(out)

    def entry(self, i: int) -> int:
        for j, v in self.entries:
            if j == i:
                return v
        return 0

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    @property
    def support_size(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def shadow_values(self) -> Tuple[int, ...]:
        """Sorted multiset of non-zero values (any support size)."""
        return tuple(sorted(v for _, v in self.entries))

    def shadow(self) -> "Shadow":
        return Shadow(self.shadow_values())

    def coord_sum(self) -> int:
        return sum(v for _, v in self.entries) % self.modulus.value

    def is_zero_sum(self) -> bool:
        return self.coord_sum() == 0

    def scaled(self, c: int) -> "GroupVec":
        c %= self.modulus.value
        if c == 0:
            raise ZeroScalar("scaling a vector by 0")
        return GroupVec(self.dim, self.modulus, tuple((i, v * c) for i, v in self.entries))

    def __add__(self, other: "GroupVec") -> "GroupVec":
        if other.dim != self.dim or other.modulus != self.modulus:
            raise DimensionMismatch("adding vectors from different groups")
        acc: Dict[int, int] = dict(self.entries)
        for i, v in other.entries:
            acc[i] = acc.get(i, 0) + v
        return GroupVec(self.dim, self.modulus, tuple(acc.items()))

    def __neg__(self) -> "GroupVec":
        return GroupVec(self.dim, self.modulus, tuple((i, -v) for i, v in self.entries))

    def __sub__(self, other: "GroupVec") -> "GroupVec":
        return self + (-other)

    def drop_coord(self, i: int) -> "GroupVec":
        """Delete coordinate i; higher coordinates shift down by one."""
        if not 1 <= i <= self.dim:
            raise DimensionMismatch(f"coordinate {i} outside 1..{self.dim}")
        ent = tuple((j if j < i else j - 1, v) for j, v in self.entries if j != i)
        return GroupVec(self.dim - 1, self.modulus, ent)


def sum_vecs(vecs: Iterable[GroupVec], dim: int, modulus: ModulusLike) -> GroupVec:
    acc: Dict[int, int] = {}
    mod = as_modulus(modulus)
    for v in vecs:
        if v.dim != dim or v.modulus != mod:
            raise DimensionMismatch("summing vectors from different groups")
        for i, x in v.entries:
            acc[i] = acc.get(i, 0) + x
    return GroupVec(dim, mod, tuple(acc.items()))


@dataclass(frozen=True)
class Shadow:
    """Canonical (sorted) multiset of at most two non-zero values."""

    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) > 2:
            raise ValueError("shadow classes are tracked for supports of size <= 2 only")
        object.__setattr__(self, "values", tuple(sorted(self.values)))

    @classmethod
    def of(cls, vec: GroupVec) -> "Shadow":
        return cls(vec.shadow_values())


class SpaceKind(str, Enum):
    FULL = "full"
    ZERO_SUM = "zero_sum"


def _dense_matrix(vecs: Sequence[GroupVec], dim: int) -> np.ndarray:
    """Columns = vectors; shape (dim, len(vecs))."""
    a = np.zeros((dim, len(vecs)), dtype=np.int64)
    for c, v in enumerate(vecs):
        for i, x in v.entries:
            a[i - 1, c] = x
    return a


def _row_reduce(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Gaussian elimination mod p; returns the echelon matrix and pivot columns."""
    a = a.copy() % p
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = None
        for rr in range(r, rows):
            if a[rr, c] % p:
                pivot = rr
                break
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        for rr in range(rows):
            if rr != r and a[rr, c]:
                a[rr] = (a[rr] - a[rr, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_gf(vecs: Sequence[GroupVec], dim: Optional[int] = None) -> int:
    """Rank over GF(p) of a list of vectors (prime modulus required)."""
    if not vecs:
        return 0
    d = dim if dim is not None else vecs[0].dim
    mod = vecs[0].modulus
    mod.require_prime()
    for v in vecs:
        if v.dim != d or v.modulus != mod:
            raise DimensionMismatch("rank over mixed dimensions or moduli")
    _, pivots = _row_reduce(_dense_matrix(vecs, d), mod.value)
    return len(pivots)


def is_linear_basis(vecs: Sequence[GroupVec], dim: int) -> bool:
    """True iff ``vecs`` has exactly ``dim`` vectors of full rank over GF(p)."""
    if len(vecs) != dim:
        return False
    return rank_gf(vecs, dim) == dim


def extract_basis_columns(vecs: Sequence[GroupVec], dim: int) -> List[int]:
    """Indices of the earliest maximal independent subset (greedy by column)."""
    if not vecs:
        return []
    mod = vecs[0].modulus
    mod.require_prime()
    p = mod.value
    a = _dense_matrix(vecs, dim)
    _, pivots = _row_reduce(a, p)
    return pivots


@dataclass(frozen=True)
class BasisFamily:
    """An ordered family of linear bases of Z_p^n (kind FULL) or of its zero-sum
    subspace (kind ZERO_SUM, where each basis has n-1 vectors)."""

    dim: int
    modulus: Modulus
    space_kind: SpaceKind
    bases: Tuple[Tuple[GroupVec, ...], ...]

    def __post_init__(self) -> None:
        self.modulus.require_prime()
        expected = self.dim if self.space_kind is SpaceKind.FULL else self.dim - 1
        for s, basis in enumerate(self.bases):
            if len(basis) != expected:
                raise DimensionMismatch(
                    f"basis #{s} has {len(basis)} vectors, expected {expected}"
                )
            for v in basis:
                if v.dim != self.dim or v.modulus != self.modulus:
                    raise DimensionMismatch(f"vector in basis #{s} lives elsewhere")
                if self.space_kind is SpaceKind.ZERO_SUM and not v.is_zero_sum():
                    raise WrongSpaceKind(
                        f"basis #{s} holds a vector with non-zero coordinate sum"
                    )
            if rank_gf(list(basis), self.dim) != expected:
                raise DimensionMismatch(f"basis #{s} is not independent")

    @classmethod
    def make(
        cls,
        dim: int,
        modulus: ModulusLike,
        bases: Iterable[Iterable[GroupVec]],
        space_kind: SpaceKind = SpaceKind.FULL,
    ) -> "BasisFamily":
        return cls(
            dim,
            as_modulus(modulus),
            SpaceKind(space_kind),
            tuple(tuple(b) for b in bases),
        )

    @property
    def t(self) -> int:
        return len(self.bases)

    def union(self) -> List[Tuple[int, int, GroupVec]]:
        """All columns as (basis index, column index, vector), family order."""
        return [
            (s, c, v) for s, basis in enumerate(self.bases) for c, v in enumerate(basis)
        ]

    def vector_at(self, s: int, c: int) -> GroupVec:
        return self.bases[s][c]

    def shadows_size2(self) -> List[Shadow]:
        """Distinct shadows of the support-2 vectors, sorted."""
        found = {Shadow.of(v) for _, _, v in self.union() if v.support_size == 2}
        return sorted(found, key=lambda s: s.values)

    def shadow_count_size2(self) -> int:
        return len(self.shadows_size2())

    def max_support_size(self) -> int:
        return max((v.support_size for _, _, v in self.union()), default=0)

    def to_json_dict(self) -> dict:
        return {
            "p": self.modulus.value,
            "n": self.dim,
            "kind": self.space_kind.value,
            "bases": [
                [[{"i": i, "v": v} for i, v in vec.entries] for vec in basis]
                for basis in self.bases
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "BasisFamily":
        p = int(data["p"])
        n = int(data["n"])
        kind = SpaceKind(data.get("kind", "full"))
        bases = [
            [
                GroupVec.make(n, p, [(int(e["i"]), int(e["v"])) for e in vec])
                for vec in basis
            ]
            for basis in data["bases"]
        ]
        return cls.make(n, p, bases, kind)


def scale_rows(
    fam: BasisFamily,
    rows1: Iterable[int],
    rows2: Iterable[int],
    a1: int,
    a2: int,
) -> BasisFamily:
    """Multiply rows in ``rows1`` by a1^-1 and rows in ``rows2`` by -a2^-1.

    An invertible diagonal transform, so every basis stays a basis and subset
    sums are carried along: Y sums to b iff the scaled Y sums to the scaled b.
    Only FULL families support this (row scaling breaks the zero-sum invariant).
    """
    if fam.space_kind is not SpaceKind.FULL:
        raise WrongSpaceKind("row scaling is defined for FULL families")
    r1, r2 = frozenset(rows1), frozenset(rows2)
    if r1 & r2:
        raise ValueError("row sets must be disjoint")
    p = fam.modulus.value
    if a1 % p == 0 or a2 % p == 0:
        raise ZeroScalar("scale factors must be non-zero")
    factors = _scale_factors(fam.dim, fam.modulus, r1, r2, a1, a2)
    bases = [
        [_apply_factors(v, factors) for v in basis] for basis in fam.bases
    ]
    return BasisFamily.make(fam.dim, fam.modulus, bases, SpaceKind.FULL)


def _scale_factors(dim, modulus, rows1, rows2, a1, a2) -> Dict[int, int]:
    p = modulus.value
    inv1 = inverse_mod(a1, modulus)
    inv2 = inverse_mod(a2, modulus)
    factors = {}
    for i in rows1:
        if not 1 <= i <= dim:
            raise DimensionMismatch(f"row {i} outside 1..{dim}")
        factors[i] = inv1
    for i in rows2:
        if not 1 <= i <= dim:
            raise DimensionMismatch(f"row {i} outside 1..{dim}")
        factors[i] = (-inv2) % p
    return factors


def _apply_factors(vec: GroupVec, factors: Mapping[int, int]) -> GroupVec:
    return GroupVec(
        vec.dim,
        vec.modulus,
        tuple((i, v * factors.get(i, 1)) for i, v in vec.entries),
    )


def scale_vec(
    vec: GroupVec, rows1: Iterable[int], rows2: Iterable[int], a1: int, a2: int
) -> GroupVec:
    """The transform of :func:`scale_rows` applied to a single vector."""
    r1, r2 = frozenset(rows1), frozenset(rows2)
    if r1 & r2:
        raise ValueError("row sets must be disjoint")
    p = vec.modulus.value
    if a1 % p == 0 or a2 % p == 0:
        raise ZeroScalar("scale factors must be non-zero")
    return _apply_factors(vec, _scale_factors(vec.dim, vec.modulus, r1, r2, a1, a2))


def contract_index_map(dim: int, rows: Iterable[int]) -> Dict[int, int]:
    """Old-coordinate -> new-coordinate map for :func:`contract_rows`.

    The merged row sits at the smallest contracted index; every contracted row
    maps there, the rest keep their relative order.
    """
    r = sorted(set(rows))
    if len(r) < 2:
        raise TooFewRows("contraction needs at least two rows")
    for i in r:
        if not 1 <= i <= dim:
            raise DimensionMismatch(f"row {i} outside 1..{dim}")
    anchor = r[0]
    kept = [i for i in range(1, dim + 1) if i == anchor or i not in set(r)]
    new_of_kept = {old: new + 1 for new, old in enumerate(kept)}
    out = {}
    for i in range(1, dim + 1):
        out[i] = new_of_kept[anchor] if i in set(r) else new_of_kept[i]
    return out


def contract_vec(vec: GroupVec, rows: Iterable[int]) -> GroupVec:
    """Merge the given coordinates into one (their sum)."""
    r = sorted(set(rows))
    idx = contract_index_map(vec.dim, r)
    m = vec.dim - len(r) + 1
    acc: Dict[int, int] = {}
    for i, v in vec.entries:
        j = idx[i]
        acc[j] = acc.get(j, 0) + v
    return GroupVec(m, vec.modulus, tuple(acc.items()))


@dataclass(frozen=True)
class RectangularFamily:
    """Output of :func:`contract_rows`: same column count per matrix as the
    source family, but fewer rows, so matrices are rectangular and may carry
    zero columns (kept in place so column indices still line up)."""

    dim: int
    modulus: Modulus
    matrices: Tuple[Tuple[GroupVec, ...], ...]

    def zero_columns(self, s: int) -> List[int]:
        return [c for c, v in enumerate(self.matrices[s]) if v.is_zero()]


def contract_rows(fam: BasisFamily, rows: Iterable[int]) -> RectangularFamily:
    """Contract the given rows (>= 2 of them) in every basis of the family.

    Contraction is linear, so subset sums commute with it; rank drops by at
    most len(rows) - 1, leaving each matrix with rank >= m = n - |rows| + 1.
    """
    r = sorted(set(rows))
    if len(r) < 2:
        raise TooFewRows("contraction needs at least two rows")
    m = fam.dim - len(r) + 1
    matrices = tuple(
        tuple(contract_vec(v, r) for v in basis) for basis in fam.bases
    )
    return RectangularFamily(m, fam.modulus, matrices)


def drop_last_row(fam: BasisFamily) -> BasisFamily:
    """Delete the last coordinate of a ZERO_SUM family.

    Projection along the last coordinate is an isomorphism from the zero-sum
    subspace onto Z_p^(n-1), so each basis maps to a FULL basis one dimension
    down, with column positions preserved.
    """
    if fam.space_kind is not SpaceKind.ZERO_SUM:
        raise WrongSpaceKind("drop_last_row applies to ZERO_SUM families")
    n = fam.dim
    bases = [[v.drop_coord(n) for v in basis] for basis in fam.bases]
    return BasisFamily.make(n - 1, fam.modulus, bases, SpaceKind.FULL)
