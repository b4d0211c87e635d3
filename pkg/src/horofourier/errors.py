"""Exception classes raised by horofourier."""


class HoroFourierError(Exception):
    """Base class for all library errors."""


class ParameterError(HoroFourierError, ValueError):
    """An argument is outside its admissible range."""


class DomainError(HoroFourierError, ValueError):
    """Input lies outside the mathematical domain of an operation (poles, strip, |z| >= 1)."""


class StripError(DomainError):
    """A spectral parameter lies outside the admissible strip |Im lambda| <= eps."""


class EvaluationError(HoroFourierError, ArithmeticError):
    """An integrand produced a non-finite value."""

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class ConvergenceError(HoroFourierError, ArithmeticError):
    """An iterative or adaptive procedure failed to reach its tolerance."""


class TruncationError(ConvergenceError):
    """A half-line integral could not be truncated within the allowed cutoff."""

    def __init__(self, message, tail_estimate=float("nan"), cutoff=float("nan")):
        super().__init__(message)
        self.tail_estimate = tail_estimate
        self.cutoff = cutoff


class InvariantError(HoroFourierError, ValueError):
    """A data object violates one of its documented invariants."""

    def __init__(self, message, invariant=""):
        super().__init__(message)
        self.invariant = invariant
