"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class WallMinorError(Exception):
    """Base class for all errors raised by this package."""


class InvalidVertexError(WallMinorError, ValueError):
    """A wall vertex lies outside the wall it is queried against."""


class OutOfBoundsError(WallMinorError, ValueError):
    """A region (box, ball) does not fit inside the wall."""


class ContractError(WallMinorError, ValueError):
    """An operation was called with arguments violating its preconditions."""


class FormatError(WallMinorError):
    """A text file or move string could not be parsed."""


class EmbeddingError(WallMinorError):
    """A rotation system is missing, inconsistent, or not planar."""


class ValidationError(WallMinorError):
    """Input data failed validation; ``violations`` lists every finding."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])

    def __str__(self) -> str:
        base = super().__str__()
        if not self.violations:
            return base
        return base + ":\n  " + "\n  ".join(self.violations)


class ClaimsError(WallMinorError):
    """The separation claims failed for the chosen scale factor."""

    def __init__(self, report):
        super().__init__(f"separation claims failed ({len(report.violations)} violations)")
        self.report = report


class InvariantError(WallMinorError, AssertionError):
    """An internal invariant was broken; indicates a bug or an upstream claims failure."""


class RenderError(WallMinorError):
    """The requested figure cannot be produced (e.g. the wall is too large)."""
