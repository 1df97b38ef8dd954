"""Exception types shared across the package."""

from __future__ import annotations


class InvalidParameterError(ValueError):
    """A parameter violates the documented preconditions."""


class GraphParseError(ValueError):
    """Malformed graph6 input. ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class DisconnectedGraphError(ValueError):
    """Distances (and hence the distance spectrum) are undefined."""


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, last_estimate: float, iterations: int):
        super().__init__(f"{message}; last Rayleigh quotient {last_estimate!r}")
        self.last_estimate = last_estimate
        self.iterations = iterations


class BracketingError(ValueError):
    """No sign change was found for a root search."""


class CapabilityError(RuntimeError):
    """The input exceeds a hard size cap of the requested method."""
