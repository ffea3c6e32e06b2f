"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class PrecisionError(ArithmeticError):
    """A certified decision is not possible at the current working precision.

    Callers are expected to retry with more bits (see ``refine``).
    """


class ReductionFailed(RuntimeError):
    """No convergent produced a certified positive epsilon within budget."""


class VerificationError(RuntimeError):
    """A certificate or theorem check did not hold.

    ``record`` names the first failing record.
    """

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record
