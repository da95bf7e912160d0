"""Exception hierarchy shared across the package."""


class PrivsigError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(PrivsigError, ValueError):
    """An input violates a documented precondition or type invariant."""


class PrivacyError(ValidationError):
    """An operation requiring mutually independent signals got dependent ones."""


class ResourceBudgetError(PrivsigError, RuntimeError):
    """A problem instance exceeds the documented size budget of an algorithm."""
