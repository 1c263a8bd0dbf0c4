"""Exception types and the ``Infeasible`` result value shared across the package."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class ZpflowError(Exception):
    """Base class for every error raised by this package."""


class NotInvertible(ZpflowError):
    pass


class ZeroElement(ZpflowError):
    pass


class NonPrimeModulus(ZpflowError):
    pass


class EvenModulus(ZpflowError):
    pass


class NonCoprime(ZpflowError):
    pass


class DimensionMismatch(ZpflowError):
    pass


class ZeroScalar(ZpflowError):
    pass


class TooFewRows(ZpflowError):
    pass


class WrongSpaceKind(ZpflowError):
    pass


class StateBudgetExceeded(ZpflowError):
    pass


class MissingArcValue(ZpflowError):
    pass


class ZeroWeight(ZpflowError):
    pass


class UnbalancedPrescription(ZpflowError):
    pass


class NotBipartite(ZpflowError):
    pass


class UnsupportedSupportSize(ZpflowError):
    pass


class TargetNotZeroSum(ZpflowError):
    pass


class FormatError(ZpflowError):
    """Malformed instance file or command-line parameter."""


@dataclass(frozen=True)
class Infeasible:
    """Returned (not raised) by exact solvers when no solution exists.

    ``certificate`` optionally carries a checkable witness, e.g. the violating
    vertex partition produced by spanning-tree packing.
    """

    reason: str = ""
    certificate: Any = None

    def __bool__(self) -> bool:
        return False
