"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """A request exceeds a configured memory or range ceiling."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a precision or logic bug."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the tolerance within its panel budget."""
