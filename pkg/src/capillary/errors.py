"""Exception hierarchy shared by all modules."""


class CapillaryError(Exception):
    """Base class for errors raised by this package."""


class DomainError(CapillaryError, ValueError):
    """An argument lies outside the domain where the model is defined."""


class NoCoexistenceError(DomainError):
    """Raised for temperatures at or above the critical temperature."""


class ConvergenceError(CapillaryError, RuntimeError):
    """An iterative method failed to converge.

    Attributes
    ----------
    last : object
        Last iterate (or best estimate) reached before giving up.
    """

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class QuadratureError(ConvergenceError):
    """Adaptive quadrature hit its subdivision limit.

    ``last`` holds ``(value, error_estimate)`` at the point of failure.
    """
