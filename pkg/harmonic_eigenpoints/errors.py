"""Exception hierarchy for harmonic-eigenpoints.

Every error raised by the library derives from HarmonicEigenpointsError, so a
caller can catch the whole family at once. Errors that signal a bad argument
also derive from ValueError.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from harmonic_eigenpoints.sphere_solver import SolveReport


class HarmonicEigenpointsError(Exception):
    """Base class for all library errors."""


class ArgumentError(HarmonicEigenpointsError, ValueError):
    """An argument is outside the domain of the operation."""


class DimensionError(ArgumentError):
    """A vector or polynomial has the wrong number of variables."""


class ParityError(ArgumentError):
    """A univariate polynomial has terms of the wrong parity."""


class NormalizationError(ArgumentError):
    """A vector expected on the unit sphere is not of unit length."""


class EmptyError(ArgumentError):
    """An operation that needs at least one item received none."""


class PreconditionError(ArgumentError):
    """The hypotheses of a construction step are not satisfied."""


class RootCountError(HarmonicEigenpointsError):
    """Root isolation found a different number of roots than the theory predicts."""

    def __init__(self, message: str, found: int, expected: int) -> None:
        super().__init__(message)
        self.found = found
        self.expected = expected


class CertificationError(HarmonicEigenpointsError):
    """A numerical certificate could not be established."""


class DegenerateCriticalPointError(CertificationError):
    """A critical point has a (numerically) singular projected Hessian."""

    def __init__(self, message: str, margin: float) -> None:
        super().__init__(message)
        self.margin = margin


class EpsilonExhaustedError(CertificationError):
    """No epsilon in the schedule produced a certified level."""

    def __init__(self, message: str, level: int, report: "SolveReport | None" = None) -> None:
        super().__init__(message)
        self.level = level
        self.report = report

    @property
    def diagnostics(self) -> str:
        """Diagnostic text of the last failing solver report."""
        if self.report is None:
            return ""
        return self.report.diagnostics


def describe(error: BaseException) -> dict[str, Any]:
    """Flatten an error into a small mapping for log records and CLI output."""
    info: dict[str, Any] = {"type": type(error).__name__, "message": str(error)}
    for attr in ("level", "margin", "found", "expected"):
        if hasattr(error, attr):
            info[attr] = getattr(error, attr)
    return info
