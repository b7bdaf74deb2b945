"""Exception hierarchy shared by every module."""


class CoverGraphError(Exception):
    """Base class for toolkit errors."""


class InvalidParameterError(CoverGraphError, ValueError):
    """A constructor or operation received parameters outside its domain."""


class CapacityError(CoverGraphError):
    """An exact computation would exceed its configured size bound.

    Exact-only policy: callers get this instead of an approximation.
    """

    def __init__(self, message, *, size=None, bound=None):
        super().__init__(message)
        self.size = size
        self.bound = bound


class FormatError(CoverGraphError, ValueError):
    """Malformed serialized input. ``position`` locates the offending byte/token."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class MalformedInputError(CoverGraphError, ValueError):
    """Structurally invalid in-memory input (partial maps, mismatched graphs)."""


class CyclicOrientationError(CoverGraphError, ValueError):
    """An orientation expected to be acyclic contains a directed cycle."""


class NotHasseDiagramError(CoverGraphError, ValueError):
    """An orientation has dependent arcs, so it is not a Hasse diagram."""


class ValidationError(CoverGraphError):
    """A certificate, homomorphism or embedding failed re-validation."""
