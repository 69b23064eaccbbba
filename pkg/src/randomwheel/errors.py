"""Exception types shared across the package."""


class RandomWheelError(Exception):
    """Base class for all randomwheel errors."""


class ParseError(RandomWheelError):
    """Malformed dataset, schema, or model input.

    ``line`` is the 1-based line number when the failure is tied to one.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DomainError(RandomWheelError, ValueError):
    """A precondition on inputs or configuration does not hold."""


class FactorUnusableError(DomainError):
    """Every record was filtered out for a factor; it cannot be scored."""


class NoInformativeFactorsError(DomainError):
    """No factor survived the importance > 0 filter."""


class UnclassifiableError(DomainError):
    """An observation admits no usable factor (all trials failed)."""


class ModelFormatError(RandomWheelError):
    """A model file is missing, corrupt, or structurally invalid."""
