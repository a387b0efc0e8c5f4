"""Exception hierarchy.

``ValidationError`` subclasses map to CLI exit code 2, ``NumericError``
subclasses to exit code 3.
"""


class L2StokesError(Exception):
    pass


class ValidationError(L2StokesError, ValueError):
    pass


class ParameterError(ValidationError):
    pass


class DegreeError(ValidationError):
    pass


class UnsupportedModelError(ValidationError):
    pass


class NumericError(L2StokesError, ArithmeticError):
    pass


class QuadratureError(NumericError):
    def __init__(self, message, *, estimate=None, error=None, intervals=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
        self.intervals = intervals


class SingularEvaluationError(NumericError):
    pass


class BracketError(NumericError):
    pass


class ModeBudgetError(NumericError):
    pass


class InconsistencyError(L2StokesError, AssertionError):
    """Raised when an internal audit contradicts a claimed closed form (a bug, not new maths)."""
