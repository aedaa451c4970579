"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PoleReport:
    """Where a gamma-type function hit a pole, and in what computation."""

    location: int
    context: str = ""

    def __post_init__(self):
        if self.location > 0:
            raise ValueError(f"pole location must be <= 0, got {self.location}")


class FracalcError(Exception):
    """Base class for all package errors."""


class DomainError(FracalcError, ValueError):
    """An argument lies outside the domain of an operation."""


class PoleError(DomainError):
    """A gamma function was evaluated at a non-positive integer."""

    def __init__(self, report: PoleReport):
        self.report = report
        where = f" ({report.context})" if report.context else ""
        super().__init__(f"gamma pole at {report.location}{where}")


class AccuracyWarning(UserWarning):
    """A numeric result was produced under conditions that degrade accuracy."""
