"""Arithmetic in Z_m and subset representation of residues.

Moduli are desk-scale, so primality is decided by plain trial division and
inverses come from ``pow(x, -1, m)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence, Union

from ._kernels import min_card_witness
from .errors import EvenModulus, Infeasible, NonPrimeModulus, NotInvertible, ZeroElement


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Modulus:
    """A modulus m >= 2 with its primality flag (computed, never trusted)."""

    value: int
    is_prime: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.value, int) or self.value < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.value!r}")
        object.__setattr__(self, "is_prime", is_prime(self.value))

    @property
    def is_odd(self) -> bool:
        return self.value % 2 == 1

    def require_prime(self) -> None:
        if not self.is_prime:
            raise NonPrimeModulus(f"modulus {self.value} is not prime")

    def require_odd(self) -> None:
        if not self.is_odd:
            raise EvenModulus(f"modulus {self.value} must be odd")

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Modulus({self.value})"


ModulusLike = Union[int, Modulus]


def as_modulus(m: ModulusLike) -> Modulus:
    return m if isinstance(m, Modulus) else Modulus(m)


@dataclass(frozen=True)
class Residue:
    """An element of Z_m, stored normalized to [0, m)."""

    value: int
    modulus: Modulus

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.modulus.value)

    def _coerce(self, other: Union["Residue", int]) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.value
        return int(other)

    def __add__(self, other: Union["Residue", int]) -> "Residue":
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Union["Residue", int]) -> "Residue":
        return Residue(self.value - self._coerce(other), self.modulus)

    def __mul__(self, other: Union["Residue", int]) -> "Residue":
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def inverse(self) -> "Residue":
        return mod_inverse(self)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Residue({self.value} mod {self.modulus.value})"


def mod_inverse(x: Residue) -> Residue:
    """Multiplicative inverse in Z_m; raises NotInvertible when gcd(x, m) != 1."""
    m = x.modulus.value
    if x.value == 0 or gcd(x.value, m) != 1:
        raise NotInvertible(f"{x.value} has no inverse mod {m}")
    return Residue(pow(x.value, -1, m), x.modulus)


def inverse_mod(value: int, modulus: ModulusLike) -> int:
    """Plain-int convenience wrapper around :func:`mod_inverse`."""
    m = as_modulus(modulus)
    return mod_inverse(Residue(value, m)).value


def _coerce_values(elems: Sequence[Union[Residue, int]], modulus: Modulus | None):
    vals = []
    mod = modulus
    for e in elems:
        if isinstance(e, Residue):
            if mod is None:
                mod = e.modulus
            elif e.modulus != mod:
                raise ValueError("mixed moduli in element list")
            vals.append(e.value)
        else:
            vals.append(int(e))
    if mod is None:
        raise ValueError("modulus required when elements are plain integers")
    return [v % mod.value for v in vals], mod


def cd_represent(
    elems: Sequence[Union[Residue, int]],
    target: Union[Residue, int],
    modulus: ModulusLike | None = None,
) -> Union[list, Infeasible]:
    """Exact subset-sum over Z_p: indices of a sub-multiset of ``elems`` summing
    to ``target``.

    Requires a prime modulus and non-zero elements.  Any multiset of at least
    p-1 non-zero residues represents every target (Cauchy--Davenport), so with
    that many elements the result is never ``Infeasible``.  The witness is the
    minimum-cardinality subset, ties broken towards earliest indices; the empty
    subset represents target 0.
    """
    mod = as_modulus(modulus) if modulus is not None else None
    if isinstance(target, Residue):
        if mod is None:
            mod = target.modulus
        elif target.modulus != mod:
            raise ValueError("target modulus differs from element modulus")
    vals, mod = _coerce_values(elems, mod)
    mod.require_prime()
    p = mod.value
    for i, v in enumerate(vals):
        if v == 0:
            raise ZeroElement(f"element #{i} is 0 mod {p}")
    tgt = (target.value if isinstance(target, Residue) else int(target)) % p
    items = [(v,) for v in vals]
    picked = min_card_witness(p, 1, items, (tgt,))
    if picked is None:
        return Infeasible(reason=f"no sub-multiset sums to {tgt} mod {p}")
    assert sum(vals[i] for i in picked) % p == tgt
    return picked
