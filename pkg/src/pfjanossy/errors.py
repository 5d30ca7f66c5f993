"""Exception hierarchy shared by all modules."""


class PfjError(Exception):
    """Base class for every error raised by :mod:`pfjanossy`."""


class OddDimension(PfjError, ValueError):
    pass


class NotSkew(PfjError, ValueError):
    pass


class TooLarge(PfjError, ValueError):
    pass


class Singular(PfjError, ArithmeticError):
    """A matrix failed the reciprocal-condition check.

    Attributes
    ----------
    condition_estimate : float
        Reciprocal 2-norm condition number of the offending matrix.
    """

    def __init__(self, message, condition_estimate=0.0):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class SingularComplementMoment(Singular):
    pass


class ResolventSingular(Singular):
    pass


class NegativeDeterminant(PfjError, ArithmeticError):
    pass


class PointOutsideInterval(PfjError, ValueError):
    pass


class UnknownRule(PfjError, ValueError):
    pass


class BudgetExceeded(PfjError, RuntimeError):
    pass


class OracleMismatch(PfjError, AssertionError):
    """Two brute-force routes that must coincide did not."""
