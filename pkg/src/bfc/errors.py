"""Exception hierarchy shared by every module."""


class BFCError(Exception):
    """Base class for all library errors."""


class ArityError(BFCError, ValueError):
    """Two objects that must share an arity do not."""


class DomainError(BFCError, ValueError):
    """Bad parameters or malformed input."""


class LimitExceeded(BFCError):
    """An exact computation was refused because the arity is above its limit.

    ``bounds`` optionally carries a ``(lo, hi)`` pair that is still valid.
    """

    def __init__(self, message, bounds=None):
        super().__init__(message)
        self.bounds = bounds


class SpecError(DomainError):
    """A function spec failed to parse; ``position`` is a 0-based offset."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}:\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class InvariantViolation(BFCError, AssertionError):
    """A proven identity failed; always an implementation bug."""


class RelationViolation(InvariantViolation):
    """A record broke the relation suite; ``record`` reproduces it."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record
