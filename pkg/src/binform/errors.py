class BinformError(Exception):
    """Base class for all errors raised by binform."""


class InvalidFormError(BinformError, ValueError):
    """Input violates a precondition (degree, discriminant, coefficients)."""


class PrecisionError(BinformError):
    """Numerical root data was too coarse to decide a rational reconstruction."""


class InternalCheckError(BinformError):
    """A structural identity that must always hold was found to fail."""


class BudgetError(BinformError):
    """An enumeration would exceed the configured work budget."""


class QuadratureError(BinformError):
    """Requested tolerance not reached; carries the best estimate found."""

    def __init__(self, msg, estimate=None, error=None):
        super().__init__(msg)
        self.estimate = estimate
        self.error = error
