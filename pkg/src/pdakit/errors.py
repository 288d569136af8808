"""Exception types shared across the package."""

from __future__ import annotations


class PdaError(Exception):
    """Base class for all package errors."""


class InvalidPdaError(PdaError):
    """An operation that requires a valid PDA was given a failing array.

    Carries the validation report when one is available.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class GridParseError(PdaError):
    """Grid text could not be parsed; ``line``/``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at ({line},{column})")
        self.line = line
        self.column = column


class CompatibilityError(PdaError):
    """A required Blackburn-compatibility check failed.

    Carries the offending ``CompatReport`` so callers can inspect witnesses.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class LiftError(PdaError):
    """A lifting precondition failed (shapes, labels, star balance, C-star)."""


class DecodeError(PdaError):
    """A peer subfile needed for XOR cancellation was not in the cache.

    This signals an invalid PDA reaching the simulator, not a runtime
    condition of valid schemes.
    """
