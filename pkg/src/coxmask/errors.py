"""Exception hierarchy shared across the package."""


class CoxmaskError(Exception):
    """Base class for all errors raised by coxmask."""


class InputError(CoxmaskError):
    """Malformed user input: bad matrix, bad generator index, bad word."""


class NotReducedError(InputError):
    """A word required to be reduced is not."""


class OrderingError(CoxmaskError):
    """A required Bruhat relation (y <= x, x <= w, ...) does not hold."""


class NotBelowError(CoxmaskError):
    """The greedy mask algorithm terminated with a nontrivial remainder.

    Carries the full remainder trace so the failure doubles as a
    Bruhat-order certificate.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class NoMoveError(CoxmaskError):
    """phi was applied to the all-ones relative mask (the fixed point)."""


class PrecisionError(CoxmaskError):
    """A floating-point sign or equality test fell inside the margin band."""


class ResourceError(CoxmaskError):
    """A search exceeded the configured max_length guard."""


class IntegrityError(CoxmaskError):
    """An internal invariant guaranteed by the theory was violated."""
