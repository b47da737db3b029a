# core/errors.py
"""
Error hierarchy shared by every package.

Anything a caller is expected to handle derives from RadioMatchError.
Violations that are part of a result (an invalid matching, a missed bound)
are returned as data and never raised.
"""


class RadioMatchError(Exception):
    """Base class for all domain errors."""


class ConfigError(RadioMatchError):
    """Configuration file, environment override or CLI parameter is invalid."""


class GraphError(RadioMatchError):
    """Graph input is not a simple undirected graph, or a generator parameter is out of range."""


class InvalidMatchingError(RadioMatchError):
    """An operation that requires a valid matching received an invalid one."""


class InvalidAssignmentError(RadioMatchError):
    """A neighbor assignment points a node at a non-neighbor."""


class DuplicateWireIdError(RadioMatchError):
    """Random-ID mode drew the same wire id for two or more nodes."""

    def __init__(self, collisions: dict[str, list[int]]):
        self.collisions = collisions
        detail = "; ".join(f"{wire} -> nodes {nodes}" for wire, nodes in collisions.items())
        super().__init__(f"Duplicate wire ids drawn: {detail}")


class MessageSizeError(RadioMatchError):
    """A sent message does not fit the O(log n) message-size bound."""


class ProtocolError(RadioMatchError):
    """A protocol produced an action the engine cannot execute."""


class InvariantViolation(RadioMatchError):
    """A runtime invariant check failed (zero tolerance)."""


class GuardExceededError(RadioMatchError):
    """An exhaustive oracle was asked to run on an instance above its size guard."""

    def __init__(self, oracle: str, size: int, limit: int, measure: str = "n"):
        self.oracle = oracle
        self.size = size
        self.limit = limit
        super().__init__(
            f"{oracle}: instance too large for exact enumeration ({measure}={size}, limit {limit})"
        )


class ToolExecutionError(RadioMatchError):
    """Unexpected failure inside a tool method, wrapped with its origin."""
