"""Exception hierarchy.

Every failure mode named by the public API maps to one of these, so callers
(and the CLI exit-code logic) can tell configuration mistakes apart from
numerical non-convergence.
"""


class GL3OscError(Exception):
    """Base class for all package errors."""


class ConfigError(GL3OscError):
    """Invalid parameter combination (bad support, kappa out of range, ...)."""


class ToleranceUnreachableError(GL3OscError):
    """Quadrature could not meet the requested tolerance within its budget."""

    def __init__(self, message: str, achieved: float = float("nan")):
        super().__init__(message)
        self.achieved = achieved


class TailNotConvergedError(GL3OscError):
    """A shell/contour tail estimate failed to drop below tolerance."""


class MellinDivergenceError(GL3OscError):
    """Mellin transform requested where the integral does not converge."""


class GammaPoleError(GL3OscError):
    """Gamma factor evaluated at a pole of a numerator Gamma function."""


class InsufficientGridError(ConfigError):
    """Grid too short for the requested fit (slope fits need >= 3 points)."""


class CoefficientError(GL3OscError):
    """Base for coefficient-table problems."""


class CoefficientParseError(CoefficientError):
    """Malformed CSV row; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CoefficientIndexError(CoefficientError):
    """Missing, duplicate, or non-positive coefficient index."""


class CoefficientNormalizationError(CoefficientError):
    """Table violates a(1,1) = 1."""


class TableTooSmallError(CoefficientError):
    """Coefficient table does not cover the support window of a sum."""
