"""Exception hierarchy shared across the package.

Parse and domain errors map to CLI exit code 1, numerical failures to
exit code 2.
"""

from __future__ import annotations


class RankReachError(Exception):
    """Base class for all package errors."""


class ParseError(RankReachError):
    """Malformed input document (edge list, JSON graph, vector file, config)."""


class DomainError(RankReachError):
    """Precondition or contract violation on otherwise well-formed input."""


class DegenerateIntervalError(DomainError):
    """Single-node graph: the attainable-value set collapses to {1}."""


class NumericalError(RankReachError):
    """Numerical failure: solver breakdown, non-convergence, oracle mismatch.

    ``details`` carries a machine-readable diagnostic that the CLI prints
    as JSON on standard error.
    """

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = dict(details or {})


class ConvergenceError(NumericalError):
    """Power iteration failed to reach the requested residual."""


class StructureError(NumericalError):
    """Computed fundamental matrix violates its guaranteed structure."""


class OracleMismatchError(NumericalError):
    """Brute-force cross-check disagrees with the production computation."""
