"""Exception types shared across the package."""

from __future__ import annotations


class LeadIndexError(Exception):
    """Base class for all leadindex errors."""


class DataValidationError(LeadIndexError):
    """One or more records failed validation.

    Carries the full list of error messages so callers can report every
    problem in a file or dataset at once instead of stopping at the first.
    """

    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        summary = f"{len(self.errors)} validation error(s)"
        if self.errors:
            summary += ": " + "; ".join(self.errors[:5])
            if len(self.errors) > 5:
                summary += "; ..."
        super().__init__(summary)


class FileFormatError(DataValidationError):
    """A CSV file could not be parsed under the strict schema."""


class UndefinedMetricError(LeadIndexError):
    """A metric is mathematically undefined for the given inputs."""
