"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonConvergenceError(RuntimeError):
    """An iterative method exhausted its iteration budget.

    Carries the best iterate seen so callers can judge how close the
    method got before giving up.
    """

    def __init__(self, message, *, best=None, residual=None, bracket=None,
                 iterations=None):
        super().__init__(message)
        self.best = best
        self.residual = residual
        self.bracket = bracket
        self.iterations = iterations
