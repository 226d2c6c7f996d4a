"""Exception types shared across the package."""


class NodalLabError(Exception):
    """Base class for all package errors."""


class DomainError(NodalLabError):
    """An argument lies outside the domain an operation is defined on."""


class QuadratureError(NodalLabError):
    """A quadrature did not reach the requested tolerance within its budget."""


class DegenerateError(NodalLabError):
    """A growth quantity degenerated (sup or boundary mass below the floor)."""


class ConvergenceError(NodalLabError):
    """An iterative polish failed to converge."""


class GeometryError(NodalLabError):
    """A geometric precondition (containment, disjointness, ...) failed."""


class NonIntegralChopError(GeometryError):
    """A tunnel length is not an integer multiple of its width."""


class ResolutionError(NodalLabError):
    """A grid resolution is below the ceiling an estimator needs, or over budget."""


class NotFoundError(NodalLabError):
    """A search came up empty; callers usually report this rather than die."""


class PreconditionError(NodalLabError):
    """A documented precondition of an analysis stage does not hold."""


class PipelineError(NodalLabError):
    """A multi-stage analysis returned empty at some stage."""

    def __init__(self, stage, message=""):
        self.stage = stage
        super().__init__(f"pipeline stage '{stage}' produced no output"
                         + (f": {message}" if message else ""))


class RoundCapExceeded(NodalLabError):
    """The multi-scale recursion hit its round cap with live balls remaining."""

    def __init__(self, rounds, partial):
        self.rounds = rounds
        self.partial = partial
        super().__init__(f"recursion still live after {rounds} rounds")
