"""
Exception hierarchy for the robust GP library.

Library code raises these; only the command layer maps them to exit codes.
"""
from typing import Optional, Sequence


class ITGPError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(ITGPError, ValueError):
    """An argument violates a documented precondition."""


class NumericalFailureError(ITGPError, RuntimeError):
    """A computation could not be completed in floating point."""

    def __init__(
        self,
        message: str,
        jitter_levels: Optional[Sequence[float]] = None,
        iteration: Optional[int] = None,
    ):
        super().__init__(message)
        self.jitter_levels = list(jitter_levels or [])
        self.iteration = iteration


class DataParseError(InvalidArgumentError):
    """A CSV input could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.line = line


class ModelFormatError(InvalidArgumentError):
    """A serialized model document is corrupt or inconsistent."""
