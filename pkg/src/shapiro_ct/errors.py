"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """A size cap was exceeded (scheme state count or oracle work budget).

    ``count`` is how far the computation got before giving up, so a caller
    can retry with a larger cap.
    """

    def __init__(self, message: str, count: int = 0, cap: int = 0):
        super().__init__(message)
        self.count = count
        self.cap = cap


class ReconstructionError(ArithmeticError):
    """No rational function of the allowed order reproduces the sequence."""


class DominanceError(ArithmeticError):
    """The expected dominant pole is not a root of the denominator."""


class MultiplicityError(ArithmeticError):
    """The expected dominant pole is not simple."""


class ConfigError(ValueError):
    """Malformed or invalid recurrence configuration."""
