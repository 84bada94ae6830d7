"""Exception types shared across the package."""


class StructureError(ValueError):
    """An input violates the preconditions of an operation."""


class CapExceeded(RuntimeError):
    """A complex would exceed the configured desk-scale limits."""
