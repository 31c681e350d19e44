# core/errors.py

from typing import Optional


class AdjacencyError(ValueError):
    """Base class for every error raised by this package."""


# --- instances and tours ---

class InstanceError(AdjacencyError):
    pass


class NotAPermutation(InstanceError):
    pass


class TooSmall(InstanceError):
    pass


class MismatchedInstances(InstanceError):
    pass


class IdenticalTours(InstanceError):
    pass


class ParseError(InstanceError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class RegularityViolation(InstanceError):
    pass


class DisconnectedGraph(InstanceError):
    pass


# --- matching ---

class MatchingError(AdjacencyError):
    pass


class ForcedConflict(MatchingError):
    pass


class NotBipartite(MatchingError):
    pass


class NotPerfect(MatchingError):
    pass


# --- oracle / configuration ---

class BoundExceeded(AdjacencyError):
    pass


class ConfigError(AdjacencyError):
    pass


class UsageError(AdjacencyError):
    pass


# --- internal invariants (always a bug when raised) ---

class InvariantViolation(AdjacencyError):
    pass


class WitnessValidationError(InvariantViolation):
    pass
