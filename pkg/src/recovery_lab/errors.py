"""Exception types shared across the package."""

from __future__ import annotations


class RecoveryLabError(Exception):
    """Base class for all package-specific errors."""


class IntervalMismatchError(RecoveryLabError, ValueError):
    """Two lotteries (or an index and a lottery) live on different intervals."""


class ShapeMismatchError(RecoveryLabError, ValueError):
    """Acts, state spaces, or vectors have incompatible shapes."""


class NotStrictlyIncreasingError(RecoveryLabError, ValueError):
    """A certainty-equivalent operation met a merely weakly increasing index."""


class EmptyGridError(RecoveryLabError, ValueError):
    """A search or evaluation grid is empty."""


class NumericalGuardError(RecoveryLabError, RuntimeError):
    """A configured numerical guard tripped (caps, degenerate parameters)."""


class EnumerationCapError(NumericalGuardError):
    """An enumeration would exceed its configured size cap."""


class RejectionCapError(NumericalGuardError):
    """Rejection sampling exceeded its retry cap."""


class CombinatorialCapError(NumericalGuardError):
    """A shattering search would exceed its combinatorial budget."""


class DatasetFormatError(RecoveryLabError, ValueError):
    """A serialized dataset is malformed.

    ``line`` is the 1-based offending line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(RecoveryLabError, ValueError):
    """A run configuration is missing, malformed, or has unknown fields."""
