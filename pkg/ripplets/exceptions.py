"""
Domain errors raised by the toolkit services.

Each error carries the process exit code the management commands use when
the error reaches them.
"""


class RippletError(ValueError):
    exit_code = 1


class ParameterDomainError(RippletError):
    """A parameter lies outside its mathematical domain (n < 2, mu <= 1, ...)."""
    exit_code = 2


class ResolutionError(RippletError):
    """The sampling grid is too coarse for the requested cascade."""
    exit_code = 2


class SignalFormatError(RippletError):
    """An input artifact cannot be read."""
    exit_code = 3


class DimensionError(RippletError):
    """Index ranges of a matrix or a decomposition do not fit together."""
    exit_code = 4


class StabilityError(RippletError):
    """A collocation or Gram system is numerically singular."""
    exit_code = 4


class IterationLimitError(RippletError):
    exit_code = 4

    def __init__(self, message, residual, iterations):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations

    def __reduce__(self):
        return type(self), (str(self), self.residual, self.iterations)


class BezoutError(RippletError):
    """No dual mask of the requested support solves the Bezout system."""
    exit_code = 4

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual

    def __reduce__(self):
        return type(self), (str(self), self.residual)


class CheckFailure(RippletError):
    """A reproduced table disagrees with its reference values."""
    exit_code = 5
