"""Exception types shared across the package."""


class SphereCritError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(SphereCritError, ValueError):
    """Invalid argument or argument outside an operation's domain."""


class UnsupportedOrderError(ParameterError):
    """Operation only available for specific operator orders (s = 1)."""


class NumericError(SphereCritError, ArithmeticError):
    """Computation produced non-finite values (divergence, overflow)."""


class AccuracyError(SphereCritError):
    """Adaptive quadrature failed its refinement-agreement check."""


class RefinementError(SphereCritError):
    """Newton refinement hit a singular or ill-conditioned system."""


class InternalError(SphereCritError):
    """Invariant violated inside the package (root finding failed, ...)."""
