"""Exception types shared across the package."""


class FracGraphError(Exception):
    """Base class for all package errors."""


class InputError(FracGraphError, ValueError):
    """An argument violates an operation's precondition."""


class DomainError(InputError):
    """A value lies outside the domain where a formula is defined."""


class PreconditionError(InputError):
    """A coloring precondition (slack, disjointness) does not hold."""

    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class ResourceError(FracGraphError, RuntimeError):
    """A size cap or search budget was exceeded."""

    def __init__(self, message, limit=None, explored=None):
        super().__init__(message)
        self.limit = limit
        self.explored = explored


class ParseError(InputError):
    """Malformed serialized input."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset
