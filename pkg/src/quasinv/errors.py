"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed the configured size budget."""


class VisibilityError(ValueError):
    """A basis conversion needs coefficients that the input cannot see."""
