"""Exception types shared across the package."""


class TractalError(Exception):
    """Base class for all package errors."""


class InvalidInputError(TractalError, ValueError):
    """Malformed configuration, out-of-domain argument, or bad parameter."""


class UnsupportedCriterionError(TractalError):
    """The requested error criterion is not available for this family."""


class CapExceededError(TractalError):
    """A requested enumeration or count exceeds the configured resource cap."""


class DivergenceError(TractalError, ArithmeticError):
    """A series or trace sum diverges for the requested exponent."""

    def __init__(self, message, dimension=None):
        super().__init__(message)
        self.dimension = dimension


class ApproximateOnlyError(TractalError):
    """Exact eigenvalues were requested where only estimates exist."""


class NoClosedFormError(TractalError):
    """No closed-form reference spectrum is available for this kernel."""


class UndecidableError(TractalError):
    """An asymptotic limit cannot be determined from the given description."""
