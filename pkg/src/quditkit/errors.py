"""Exception types raised across the package."""


class QuditError(ValueError):
    """Base class for invalid inputs to the simulator."""


class InvalidDimensionError(QuditError):
    pass


class NonFiniteAngleError(QuditError):
    pass


class WireError(QuditError):
    pass


class DimensionMismatchError(QuditError):
    pass


class DigitError(QuditError):
    pass


class CircuitError(QuditError):
    """An error tied to a specific op of a circuit."""

    def __init__(self, op_index, message):
        self.op_index = op_index
        super().__init__(f"op {op_index}: {message}")


class UnitaryCapError(QuditError):
    """Unitary extraction would exceed the configured column cap."""

    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(
            f"unitary of dimension N={size} exceeds the extraction cap of {cap} "
            f"(set QUDITKIT_UNITARY_CAP to raise it)"
        )
