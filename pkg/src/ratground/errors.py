"""Exception types and source spans shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    """Position of a statement or token inside an input file."""

    source: str
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.source}:{self.line}:{self.col}"


class RatGroundError(Exception):
    """Base class for every error this package raises deliberately."""


class ZeroDenominatorError(RatGroundError):
    pass


class UndefinedArithmeticError(RatGroundError):
    """Division by zero and friends; the grounder turns this into a dropped binding."""


class ParseError(RatGroundError):
    def __init__(self, message: str, span: Span):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


class GroundingError(RatGroundError):
    def __init__(self, message: str, span: Span | None = None):
        super().__init__(f"{span}: {message}" if span is not None else message)
        self.message = message
        self.span = span


class RangeTypeError(GroundingError):
    """A range bound evaluated to something other than an integer."""


class ExternalCallError(GroundingError):
    """Unknown external function name, or arity mismatch."""


class RecursiveAggregateError(GroundingError):
    """A predicate occurs in the dependency cycle of its own aggregate."""


class TooLargeForBruteForceError(RatGroundError):
    """The reference solver refuses programs beyond its exhaustive-search guard."""


class InternalError(RatGroundError):
    """Invariant violation; indicates a bug, not a user error."""
