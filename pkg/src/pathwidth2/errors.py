"""Exception hierarchy shared by every module of the package."""


class PathwidthError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PathwidthError, ValueError):
    """Malformed input text; ``line`` is the 1-based offending line, if known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(PathwidthError, ValueError):
    """An operation was called with arguments outside its contract."""


class CapacityError(PathwidthError):
    """Input exceeds the size an exhaustive routine is willing to handle."""


class SoundnessError(PathwidthError, AssertionError):
    """The recognizer and the exact oracle disagree. Always a bug."""
