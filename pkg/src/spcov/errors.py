"""Domain error types.

Everything raised on a violated precondition derives from ``SpcovError`` so
callers (notably the command line front end) can distinguish domain failures
from programming bugs.
"""


class SpcovError(ValueError):
    """Base class for precondition and contract violations."""


class NotConnectedError(SpcovError):
    """Raised when an operation requires a connected graph."""


class NotPsdError(SpcovError):
    """Raised when a matrix or instance must be positive semidefinite."""


class NotRulerError(SpcovError):
    """Raised when a mark set fails ruler coverage requirements."""
