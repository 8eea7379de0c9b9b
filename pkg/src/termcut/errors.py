"""Exception types shared across the package."""


class TermcutError(Exception):
    """Base class for all library errors."""


class InvalidInputError(TermcutError, ValueError):
    """Malformed graph, vector, set, or violated precondition."""


class ResourceLimitError(TermcutError):
    """Input exceeds an enumeration limit (terminal or vertex count)."""


class DegenerateInstanceError(TermcutError):
    """Instance where the minimum terminal cut is zero."""
