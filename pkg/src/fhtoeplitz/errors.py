"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of the requested quantity."""


class FactorizationError(DomainError):
    """A symbol cannot be spectrally factorized (not strictly positive)."""


class ExclusionError(DomainError):
    """A mathematically excluded case was requested (e.g. alpha = 1/2)."""


class ConvergenceError(RuntimeError):
    """An iteration failed to converge within its cap.

    Attributes:
        last_iterate: The final value reached before giving up.
        iterations: Number of iterations performed.
    """

    def __init__(self, message: str, last_iterate=None, iterations: int = 0):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.iterations = iterations


class BreakdownError(ArithmeticError):
    """The Levinson recursion lost positive definiteness.

    Attributes:
        step: Index of the recursion step at which the failure occurred.
    """

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step
