"""Exception types shared by all flk modules."""


class FlkError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(FlkError):
    """Dimension, variable-count, or truncation-order mismatch between operands."""


class TruncationError(FlkError):
    """A coefficient beyond the truncation order was requested (unknown, not zero)."""


class SubstitutionError(FlkError):
    """Substitution image has a nonzero constant term, so composition would not truncate consistently."""


class ScalarFormatError(FlkError):
    """Text does not conform to the scalar syntax."""


class PreconditionError(FlkError):
    """A documented operation precondition failed on otherwise well-formed input."""

    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = list(failures) if failures else []


class InsufficientOrderError(PreconditionError):
    """The truncation order is too low for the requested extraction."""


class InputError(FlkError):
    """User-supplied data is invalid (maps to CLI exit code 2)."""


class ParseError(InputError):
    """Spec-file diagnostic with a stable code and source location."""

    def __init__(self, code, line, col, message):
        super().__init__(f"{line}:{col}: [{code}] {message}")
        self.code = code
        self.line = line
        self.col = col
        self.message = message


class InternalConsistencyError(FlkError):
    """An internally guaranteed identity failed; signals a bug, never valid-input behavior."""
