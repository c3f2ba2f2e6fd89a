"""Typed errors raised by the screening calculus.

Every error carries a stable ``code`` string used verbatim by the CLI and
the HTTP service when rendering ``{"error": {"code", "message"}}`` bodies.
"""

from __future__ import annotations


class ScreeningError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "ScreeningError"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class UndefinedPosterior(ScreeningError):
    """The posterior is 0/0: the observed evidence has probability zero
    under both the disease and the no-disease hypothesis."""

    code = "UndefinedPosterior"


class ConflictingCertainty(UndefinedPosterior):
    """Two outcomes in one sequence assert opposite certainties (one rules
    disease in with probability one, another rules it out)."""

    code = "ConflictingCertainty"

    def __init__(self, message: str, first: str = "", second: str = ""):
        super().__init__(message)
        self.first = first
        self.second = second


class UninformativeTest(ScreeningError):
    """sensitivity + specificity = 1: a result carries no evidence, so the
    requested quantity does not exist."""

    code = "UninformativeTest"


class TargetUnreachable(ScreeningError):
    """No number of repetitions of this test can reach the requested
    predictive value (positive likelihood ratio at or below 1)."""

    code = "TargetUnreachable"


class InvalidTarget(ScreeningError):
    """The requested target predictive value is outside the meaningful
    range (at or below the pretest probability, or not inside (0, 1))."""

    code = "InvalidTarget"


class NoUniqueIntersection(ScreeningError):
    """The predictive-value curves do not cross at a single interior
    point, so no intersection can be reported."""

    code = "NoUniqueIntersection"


class NumericalFailure(ScreeningError):
    """A computed result failed its own consistency check."""

    code = "NumericalFailure"


class QuadratureFailure(ScreeningError):
    """Adaptive integration could not reach the requested tolerance."""

    code = "QuadratureFailure"


class ValidationError(ScreeningError):
    """A document or request failed validation; ``message`` includes the
    offending field path or source location."""

    code = "ValidationError"
