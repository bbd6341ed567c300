"""Shared exception types and process exit-code conventions."""

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_RESOURCE_LIMIT = 3


class InvalidInputError(ValueError):
    """An operation was called outside its documented domain."""


class ResourceLimitError(RuntimeError):
    """An operation refused to run because it would exceed a size guard.

    Guards protect against accidental quadratic/cubic blowups; they can be
    raised via the ADDCOMB_PAIR_GUARD environment variable.  `partial` may
    carry whatever was computed before the limit was hit.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
