"""Exception types shared across the package.

The CLI maps these onto exit codes: ``DomainError`` and
``PreconditionError`` are input errors (2), ``ResourceError`` is a
resource-cap failure (3).
"""


class DomainError(ValueError):
    """Input outside the domain of an operation (bad rank, non-dominant weight, ...)."""


class PreconditionError(ValueError):
    """An operation was called on data that fails a documented precondition."""


class ResourceError(RuntimeError):
    """An enumeration would exceed its configured candidate cap."""
