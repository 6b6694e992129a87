"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "AddcompError",
    "PreconditionViolated",
    "CoverFailed",
    "RatioNotSatisfied",
    "IndexOutOfRange",
    "HypothesisViolated",
    "BlockPreconditionFailed",
    "TooLarge",
    "NoCover",
]


class AddcompError(Exception):
    """Base class for all library-specific failures."""


class PreconditionViolated(AddcompError):
    """A documented precondition failed; the message names the clause."""

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        super().__init__(f"{clause}: {detail}" if detail else clause)


class CoverFailed(AddcompError):
    """Internal consistency failure: a cover that must exist was not found."""


class RatioNotSatisfied(AddcompError):
    """No valid (alpha, tail start) witnesses the growth-ratio condition."""


class IndexOutOfRange(AddcompError):
    """The sequence is too short for the derived parameters."""


class HypothesisViolated(AddcompError):
    """A per-element hypothesis failed; carries the offending element."""

    def __init__(self, offender: int, detail: str = ""):
        self.offender = offender
        super().__init__(detail or f"hypothesis violated at {offender}")


class BlockPreconditionFailed(AddcompError):
    """A dyadic block's runtime counting check failed at the given exponent."""

    def __init__(self, exponent: int, detail: str = ""):
        self.exponent = exponent
        super().__init__(detail or f"block precondition failed at exponent {exponent}")


class TooLarge(AddcompError):
    """The instance exceeds the exhaustive-search size cap."""


class NoCover(AddcompError):
    """Even the full candidate set fails to cover the target range."""
