"""Exception types shared across the package."""


class DftframeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(DftframeError, ValueError):
    """An argument violates a documented precondition."""


class UnsupportedCodeError(DftframeError):
    """The requested (n, k, variant) combination cannot be constructed."""


class ConstructionError(DftframeError):
    """A matrix self-check failed after construction (internal bug guard)."""


class IllConditionedError(DftframeError):
    """A matrix needed for reconstruction is numerically singular."""


class InsufficientDataError(DftframeError):
    """Fewer samples survive than are needed to reconstruct."""


class ResourceLimitError(DftframeError):
    """The request exceeds a built-in size guard."""
