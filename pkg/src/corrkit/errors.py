"""Shared exception types."""
from __future__ import annotations


class BudgetError(RuntimeError):
    """A configured search or closure budget was exhausted."""


class UnsupportedSpaceError(ValueError):
    """The requested computation is not decidable on this presentation
    (for example, an infinite label set emitted from one vertex set)."""


class ParseError(ValueError):
    """An input document is not syntactically readable."""


class ValidationError(ValueError):
    """An input document parses but describes an inconsistent object."""
