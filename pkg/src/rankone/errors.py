"""Exception types shared across the toolkit.

Division by an exact zero uses the builtin ``ZeroDivisionError``.
"""


class RankOneError(Exception):
    """Base class for toolkit errors."""


class PreconditionViolation(RankOneError, ValueError):
    """An operation was called outside the hypotheses it relies on."""


class InvalidSpace(RankOneError, ValueError):
    """Weight data does not define a normalized, bounded, bounded-below shift."""


class Divergent(RankOneError, ArithmeticError):
    """A norm was requested for a series that is not in the space."""


class InconclusiveGap(RankOneError):
    """A numerical rank decision had no clear singular-value gap."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class ConfigError(RankOneError, ValueError):
    """Malformed or invalid run configuration."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InconclusiveVerdict(RankOneError):
    """A prediction depends on a membership question the toolkit cannot decide."""
