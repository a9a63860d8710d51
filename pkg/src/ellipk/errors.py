"""Exception types shared across the package."""


class EllipkError(Exception):
    """Base class for library errors."""


class DomainError(EllipkError, ValueError):
    """An argument lies outside the region where the series or bounds are valid."""


class TableExhausted(EllipkError):
    """The coefficient table ran out before the tail bound fell below ``tol``."""

    def __init__(self, message, achieved_bound=None, max_index=None):
        super().__init__(message)
        self.achieved_bound = achieved_bound
        self.max_index = max_index


class PoleError(EllipkError, ArithmeticError):
    """cn vanished (or went negative) where a quotient by cn was requested."""


class ConsistencyError(EllipkError):
    """Two independent routes to the same quantity disagree."""

    def __init__(self, message, analytic=None, numeric=None):
        super().__init__(message)
        self.analytic = analytic
        self.numeric = numeric
