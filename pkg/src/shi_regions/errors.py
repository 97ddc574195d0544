class ValidationError(ValueError):
    """Raised when an input object violates its structural invariants."""


class ResourceLimitError(RuntimeError):
    """Raised when a request exceeds the configured size guard."""
