"""
Exceptions that can be raised by the evoart library.
"""
from typing import TYPE_CHECKING, List, Optional

if TYPE_CHECKING:
    from evoart.core.types import Violation


class EvoArtError(Exception):
    """A generic evoart exception."""


class GenomeParseError(EvoArtError):
    """Raised when a genome document is malformed. Carries the position of the problem
    when it's known (1-based line and column)."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        if line is not None:
            message = "line %d, column %d: %s" % (line, column or 0, message)
        super().__init__(message)
        self.line = line
        self.column = column


class GenomeValidationError(EvoArtError):
    """A well-formed genome breaks one or more gene invariants."""

    def __init__(self, violations: List["Violation"]):
        self.violations = violations
        super().__init__(
            "%d invariant violation(s): %s"
            % (len(violations), "; ".join(str(v) for v in violations[:5]))
        )


class CompositionError(EvoArtError):
    """Invalid genome composition or two genomes with incompatible compositions."""


class DimensionMismatchError(EvoArtError):
    """Two images (or an image and a genome canvas) have different dimensions."""


class ScoreRangeError(EvoArtError):
    """An absolute fitness score is outside of the possible range for the canvas."""


class ImageIOError(EvoArtError):
    """Errors reading input files (images, genomes, CSV files)."""

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__("%s: %s" % (path, reason))


class OutputError(EvoArtError):
    """Output directory or file can't be created or written."""

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__("%s: %s" % (path, reason))


class ParameterError(EvoArtError):
    """An evolution parameter is unknown, malformed or out of range."""

    def __init__(self, key: str, message: str, legal_range: Optional[str] = None):
        self.key = key
        self.legal_range = legal_range
        text = "%s: %s" % (key, message)
        if legal_range:
            text += " (legal range: %s)" % legal_range
        super().__init__(text)


class ConfigParseError(EvoArtError):
    """Syntax errors in an evolution parameter file."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__("line %d, column %d: %s" % (line, column, message))


class SweepSpecError(EvoArtError):
    """Invalid experiment sweep specification."""


class SweepRunError(EvoArtError):
    """Raised when one of the runs in a sweep fails. The original exception is in `reason`."""

    def __init__(self, axis_value: str, repetition: int, reason: BaseException):
        self.axis_value = axis_value
        self.repetition = repetition
        self.reason = reason
        super().__init__(
            "Run for axis value %s, repetition %d failed: %s: %s"
            % (axis_value, repetition, get_exception_name(reason), reason)
        )


class AggregationError(EvoArtError):
    """Run statistics can't be aggregated (no runs or runs of different lengths)."""


class InvariantViolationError(EvoArtError):
    """An engine invariant (elitism, score consistency, genome validity) was breached.
    This always indicates a bug in the engine."""


def get_exception_name(o):
    module = o.__class__.__module__
    if module is None or module == str.__class__.__module__:
        return o.__class__.__name__
    return module + "." + o.__class__.__name__
