"""Exception hierarchy shared by the library and the command-line surface."""

from typing import Optional


class IsphError(ValueError):
    """Base class for every error raised on invalid input or configuration."""


class ParseError(IsphError):
    """A text input could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateDomainError(IsphError):
    """The domain has too few vertices to carry a filtration."""


class FormatError(IsphError):
    """A structured input violates its file format or a field invariant."""


class UnknownCaseError(IsphError):
    """A synthetic case name is not known to the generator."""


class EmptyHierarchyError(IsphError):
    """A hierarchy without nodes was passed where a rooted tree is required."""


class ConfigurationError(IsphError):
    """Run configuration flags are missing or mutually exclusive."""


class FieldComputationError(IsphError):
    """Computing a summary for one field of a sequence failed."""

    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"field {index}: {cause}")
