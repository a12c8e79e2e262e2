"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: config errors exit 2, numerical/domain
errors exit 3, an undefined intrusion estimate exits 4.
"""

from __future__ import annotations


class FlqkdError(Exception):
    """Base class for all package errors."""


class ValidationError(FlqkdError, ValueError):
    """Structured input violates an invariant (shape, symmetry, range)."""


class DomainError(FlqkdError, ValueError):
    """Scalar argument outside the mathematical domain of an operation."""


class UnphysicalStateError(FlqkdError):
    """Covariance matrix violates the uncertainty principle."""


class EstimatorUndefinedError(FlqkdError):
    """Monitor counts cannot support a finite intrusion estimate."""


class ConfigError(FlqkdError):
    """Run configuration failed to parse or validate."""
