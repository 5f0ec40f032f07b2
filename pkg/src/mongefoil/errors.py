"""Exception types raised across the package."""


class MongefoilError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(MongefoilError, ValueError):
    """An argument is malformed (zero vector, singular matrix, shape mismatch)."""


class DegenerateBodyError(MongefoilError, ValueError):
    """The input points or half-spaces do not enclose a body with interior."""


class UnsupportedRepresentationError(MongefoilError, TypeError):
    """The operation needs a representation the body does not have."""


class OutsideParameterDiskError(MongefoilError, ValueError):
    """A leaf parameter zeta was given with |zeta| > 1."""


class LpStatusError(MongefoilError):
    """A linear program was infeasible or unbounded where an optimum was needed."""

    def __init__(self, status, message=None):
        self.status = status
        super().__init__(message or f"linear program is {status}")


class ConvergenceError(MongefoilError, RuntimeError):
    """An iterative solver stopped without meeting its tolerance.

    ``last`` carries the final iterate (or best candidate) so callers can
    inspect how close the solver got.
    """

    def __init__(self, message, last=None, residual=None):
        super().__init__(message)
        self.last = last
        self.residual = residual
