"""Exception hierarchy.

Configuration problems and solver failures are kept distinct because the
command line maps them to different exit codes (2 and 3 respectively).
"""

from __future__ import annotations


class SidedotError(Exception):
    """Base class for all package errors."""


class ConfigError(SidedotError):
    """Invalid configuration: parse error, unknown key, invariant violation."""


class SolverError(SidedotError):
    """Numerical solver failure."""


class QuadratureError(SolverError):
    """Adaptive quadrature did not converge.

    Carries the partial estimate and the error bound reported by the
    integrator so callers can log or inspect them.
    """

    def __init__(self, message: str, partial_value: float, error_bound: float):
        super().__init__(message)
        self.partial_value = partial_value
        self.error_bound = error_bound


class BracketError(SolverError):
    """No sign change found while scanning for a circuit operating point."""


class ConvergenceError(SolverError):
    """Root refinement failed to reach the residual tolerance."""

    def __init__(self, message: str, best_bracket: tuple[float, float] | None = None):
        super().__init__(message)
        self.best_bracket = best_bracket


class SweepError(SolverError):
    """A sweep aborted part-way; ``partial`` holds the completed points."""

    def __init__(self, message: str, partial: list, cause: Exception | None = None):
        super().__init__(message)
        self.partial = partial
        self.cause = cause
