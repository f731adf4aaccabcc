"""Exception hierarchy.

Every error carries a distinct ``exit_code`` so the command-line front end can
map failures onto stable process exit statuses.
"""
from __future__ import annotations


class SpectralError(ValueError):
    exit_code = 10


class NotSquare(SpectralError):
    exit_code = 11


class NotSymmetric(SpectralError):
    exit_code = 12


class KOutOfRange(SpectralError):
    exit_code = 13


class NoConvergence(SpectralError):
    exit_code = 14


class NonPositiveWeight(SpectralError):
    exit_code = 15


class WrongGraphKind(SpectralError):
    exit_code = 16


class ZeroDegreeVertex(SpectralError):
    exit_code = 17


class EmptyCluster(SpectralError):
    exit_code = 18


class ZeroClusterWeight(SpectralError):
    exit_code = 19


class NegativeEntry(SpectralError):
    exit_code = 20


class DimensionMismatch(SpectralError):
    exit_code = 21


class NegativeAffinity(SpectralError):
    exit_code = 22


class DegenerateEmbedding(SpectralError):
    exit_code = 23


class TooLarge(SpectralError):
    exit_code = 24


class SymmetryViolation(SpectralError):
    exit_code = 25


class DuplicateCoordinate(SpectralError):
    exit_code = 26


class UnsupportedObjective(SpectralError):
    exit_code = 27


class NonFiniteEntry(SpectralError):
    exit_code = 28


class ParseError(SpectralError):
    """Malformed matrix file. ``line`` is 1-based, or None for whole-file problems."""

    exit_code = 29

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def all_error_types() -> list[type[SpectralError]]:
    """Every concrete error class, ordered by exit code."""
    seen = []
    stack = [SpectralError]
    while stack:
        cls = stack.pop()
        seen.append(cls)
        stack.extend(cls.__subclasses__())
    return sorted(seen, key=lambda c: c.exit_code)
