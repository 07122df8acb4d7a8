"""Exception types shared across the package."""


class SimplefracError(Exception):
    """Base class for all package errors."""


class DomainError(SimplefracError, ValueError):
    """Input violates a precondition (bad range, coincident points, pole on
    the interval, oversized problem).  The message names the violated
    precondition."""


class TheoremRangeError(DomainError):
    """Parameters are outside the hypothesis range of the construction.

    The object is frequently still well defined; callers that pass
    ``force=True`` downgrade this to a diagnostic instead.
    """


class EvaluationError(DomainError):
    """Evaluation requested too close to a pole."""


class ToleranceNotMetError(SimplefracError):
    """An iterative routine could not reach the requested tolerance.

    Carries the best estimate found so far in :attr:`best`.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
