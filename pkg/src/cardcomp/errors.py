"""Exception hierarchy shared by all cardcomp modules."""

from __future__ import annotations


class CardCompError(Exception):
    """Base class for every error raised by this package."""


class ParseError(CardCompError, SyntaxError):
    """Malformed concrete syntax.

    ``position`` is a 0-based character offset into the input and
    ``expected`` the set of token kinds that would have been accepted there.
    """

    def __init__(self, message: str, position: int, expected=(), text: str = ""):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        self.text = text
        detail = message
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(f"{detail} at offset {position}")


class UnknownLabel(CardCompError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return f"unknown set label {self.name!r}"


class MalformedTree(CardCompError, ValueError):
    """A tree shape that is not a finite full binary tree."""


class DimensionMismatch(CardCompError, ValueError):
    pass


class LimitExceeded(CardCompError, RuntimeError):
    """Label cap or step budget exhausted."""


class BoundsTooLarge(LimitExceeded):
    """Brute-force enumeration would exceed its step budget."""


class ConditionsViolated(CardCompError, ValueError):
    """A relation fails the representability conditions for a single measure.

    ``witness`` describes the offending condition; for cancellation failures it
    holds the two balanced sequences.
    """

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class SeedDerivable(CardCompError, ValueError):
    """The seed comparison of a total-order extension is already derivable."""
