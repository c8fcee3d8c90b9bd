"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ShapeError(ValueError):
    """Array shapes or lengths do not match the operation's contract."""


class UsageError(ValueError):
    """The operation was called in a way its contract does not allow."""


class CapacityError(ValueError):
    """A size parameter exceeds the implementation ceiling."""


class NumericalError(RuntimeError):
    """An iterative numerical procedure failed to converge."""
