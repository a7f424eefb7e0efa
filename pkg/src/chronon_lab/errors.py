"""Exception types shared across the library."""


class ChrononLabError(Exception):
    """Base class for all library-specific errors."""


class DomainError(ChrononLabError, ValueError):
    """An argument lies outside the physical or mathematical domain."""


class PreconditionError(ChrononLabError, ValueError):
    """A stated operation precondition is violated.

    The message names the violated invariant so callers (and the CLI)
    can surface it verbatim.
    """


class StabilityError(DomainError):
    """An eigenvalue exceeds the critical limit of a stable scheme."""


class ConvergenceError(ChrononLabError, RuntimeError):
    """An iterative solve failed to converge.

    Attributes
    ----------
    residual : float
        Last relative residual before giving up.
    iterations : int
        Number of iterations performed.
    """

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class NumericError(ChrononLabError, RuntimeError):
    """A dense linear-algebra kernel failed; message carries a condition report."""


class ResolutionError(ChrononLabError, ValueError):
    """A grid is too coarse to resolve the requested kernel."""
