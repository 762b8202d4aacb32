"""Exception types shared across the package."""

from __future__ import annotations


class MergeNetError(Exception):
    """Base class for all package errors."""


class CycleDetected(MergeNetError):
    """The graph contains a directed cycle."""


class UnknownVertex(MergeNetError):
    """A referenced vertex is not declared in the graph."""


class NoPath(MergeNetError):
    """No directed path exists between the requested endpoints."""


class GraphTooLarge(MergeNetError):
    """Graph exceeds the configured edge limit."""


class NotCovered(MergeNetError):
    """Some edge lies on no group path."""


class InvalidNetwork(MergeNetError):
    """A network violates a structural invariant."""


class BudgetExceeded(MergeNetError):
    """An enumeration ran past its budget.

    ``partial`` holds whatever results were collected before the abort.
    """

    def __init__(self, message: str = "enumeration budget exceeded", partial=None):
        super().__init__(message)
        self.partial = partial


class RerouteDetected(MergeNetError):
    """An AA-walk revisited a station, which only happens on reroutable input."""


class PhiWalkUnsupported(MergeNetError):
    """Forward walks are undefined for identical-source networks."""


class MultiwayMerging(MergeNetError):
    """A merging has more than two participating paths."""


class NotTwoGroup(MergeNetError):
    """Operation requires a network with exactly two path groups."""


class NotTwoByN(MergeNetError):
    """Operation requires a (2, n) network."""


class DecompositionError(MergeNetError):
    """The adjacent-pair order is not total; input is outside the contract."""


class InvalidStroke(MergeNetError):
    """A stroke list is not a valid description (position is 1-based)."""

    def __init__(self, position: int, message: str = ""):
        super().__init__(message or f"invalid stroke at position {position}")
        self.position = position


class IncompatibleInterface(MergeNetError):
    """Concatenation inputs do not expose the required merging interface."""


class MismatchedN(MergeNetError):
    """Concatenation inputs have incompatible path counts."""


class NonMonotoneCuts(MergeNetError):
    """Chain concatenation requires non-decreasing cut parameters."""


class ParamTooSmall(MergeNetError):
    """Generator parameter below the construction's valid range."""


class UnknownFixture(MergeNetError):
    """No fixture with the requested name."""
