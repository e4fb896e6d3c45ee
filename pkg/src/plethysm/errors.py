"""Shared exception types."""


class UsageError(ValueError):
    """Raised when arguments violate an operation's preconditions."""


class ResourceCapError(RuntimeError):
    """Raised when a computation would exceed a configured size cap.

    The message always names the cap that was hit, so callers can report
    the pair/size as "uncomputed" instead of failing wholesale.
    """
