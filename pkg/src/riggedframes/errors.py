"""Exception types shared across the toolkit."""


class DimensionMismatchError(ValueError):
    """Operands carry incompatible truncations or grid lengths."""


class InvalidConfigError(ValueError):
    """A constructor argument or run configuration violates its preconditions."""


class WeightSyntaxError(ValueError):
    """A weight expression failed to parse; ``offset`` is the byte position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class WeightEvalError(ArithmeticError):
    """Weight evaluation produced a non-finite value (division by zero, overflow)."""


class NotAFrameError(RuntimeError):
    """The frame operator is numerically singular; carries the offending eigenvalue."""

    def __init__(self, message, lambda_min):
        super().__init__(message)
        self.lambda_min = lambda_min


class NumericError(RuntimeError):
    """A numerical routine failed to converge or missed its postcondition."""
