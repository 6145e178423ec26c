class ValidationError(ValueError):
    pass


class NoClosedFormError(ValidationError):
    """
    Raised when a scenario's ratio law has no closed form;
    such scenarios can only be handled by sampling.
    """
    pass


class ConvergenceError(ArithmeticError):
    """
    Raised when a numerical procedure fails to meet its tolerance.

    :param message: explanation
    :param estimate: best estimate reached
    :param error: achieved error estimate
    """
    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class BracketError(ConvergenceError):
    """
    Raised when a root cannot be bracketed;
    estimate holds the last (lower, upper) bracket.
    """
    pass
