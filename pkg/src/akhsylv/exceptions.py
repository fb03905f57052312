"""Exception hierarchy shared by the library and the CLI.

Every class carries the process exit code the CLI reports for it.
"""

__all__ = [
    "AkhsylvError",
    "DomainError",
    "UnsupportedDomainError",
    "SingularDomainError",
    "GeometryError",
    "DimensionError",
    "AccuracyError",
    "ConditioningError",
    "NonConvergenceError",
    "MatrixFormatError",
    "UsageError",
]


class AkhsylvError(Exception):
    """Base class for all akhsylv errors."""

    exit_code: int = 1


class DomainError(AkhsylvError, ValueError):
    """Raised for malformed intervals or points outside a cut domain."""

    exit_code = 3


class UnsupportedDomainError(DomainError):
    """Raised when an operation needs a different number of intervals."""


class SingularDomainError(DomainError):
    """Raised when zero lies in a spectral interval or spectra coincide."""


class GeometryError(DomainError):
    """Raised when contours or separating lines intersect the domain."""


class DimensionError(AkhsylvError, ValueError):
    """Raised for inconsistent matrix shapes."""

    exit_code = 3


class AccuracyError(AkhsylvError, ArithmeticError):
    """Raised when a quadrature or iteration cannot reach its tolerance."""

    exit_code = 2


class ConditioningError(AccuracyError):
    """Raised when the Stieltjes procedure loses positivity."""


class NonConvergenceError(AccuracyError):
    """Raised when a series cannot converge (ρ ≤ 1 or ν ≥ 0)."""


class MatrixFormatError(AkhsylvError, ValueError):
    """Raised when a matrix-text file cannot be parsed."""

    exit_code = 4


class UsageError(AkhsylvError, ValueError):
    """Raised for invalid command-line arguments."""
