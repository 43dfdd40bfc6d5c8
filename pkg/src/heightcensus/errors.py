"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``BudgetExceeded`` and
``InfeasibleError`` -> 2, ``CertificationError`` -> 3, ``DomainError`` (bad
input) -> 4.
"""

from __future__ import annotations


class HeightCensusError(Exception):
    pass


class DomainError(HeightCensusError, ValueError):
    """An input lies outside the operation's domain."""


class CertificationError(HeightCensusError):
    """A certified enclosure could not be tightened enough before the precision cap."""

    def __init__(self, message: str, undecided: list | None = None):
        super().__init__(message)
        self.undecided = list(undecided or [])


class BudgetExceeded(HeightCensusError):
    """An enumeration would scan more candidates than the configured budget."""

    def __init__(self, message: str, estimate: int, budget: int):
        super().__init__(message)
        self.estimate = estimate
        self.budget = budget


class InfeasibleError(HeightCensusError):
    """A linear system or schedule has no admissible solution."""


class CacheFormatError(HeightCensusError):
    pass
