"""
Exception hierarchy for derivator-combinatorics.

Every domain error is a ``ValueError`` so callers that only care about
"bad input" can catch the builtin. Each error may carry a ``witness``:
the smallest piece of data that shows the violation (a failing triple of
morphisms, a cycle, a pair of objects).
"""
from typing import Any, Optional


class DerivatorCombinatoricsError(ValueError):
    """Base class for all errors raised by this package."""

    def __init__(self, message: str, witness: Optional[Any] = None) -> None:
        super().__init__(message)
        self.witness = witness


class CategoryLawError(DerivatorCombinatoricsError):
    """A composition table violates identity, closure or associativity."""


class NotAPosetError(DerivatorCombinatoricsError):
    """Covers contain a cycle or the object labels are not distinct."""


class FunctorError(DerivatorCombinatoricsError):
    """A map of categories does not preserve structure."""


class OrderError(DerivatorCombinatoricsError):
    """An order is empty, has repeated labels, or a map is not monotone."""


class TruncationError(DerivatorCombinatoricsError):
    """A simplicial set is not truncated high enough for the construction."""


class SearchBoundExceeded(DerivatorCombinatoricsError):
    """Isomorphism search would branch over a level larger than the bound."""


class FormatError(DerivatorCombinatoricsError):
    """Malformed JSON input."""


class UnknownClaimFilter(DerivatorCombinatoricsError):
    """A claim-id prefix selects nothing from the registry."""
