"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all cpnkb errors."""


class DomainError(ToolkitError):
    """An identifier does not belong to the structure it is used against."""


class FormatError(ToolkitError):
    """Well-formed syntax carrying ill-formed content (shape, value range)."""


class ParseError(FormatError):
    """Malformed textual input; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceError(ToolkitError):
    """A configured budget (nodes, variables) was exceeded."""


class PreconditionError(ToolkitError):
    """An operation was invoked on arguments outside its contract."""
