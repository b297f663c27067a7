"""Exception types shared across the package."""

from __future__ import annotations


class SingularityError(ValueError):
    """Raised when a polar projection meets a (near-)singular matrix."""


class BranchCutError(ValueError):
    """Raised when a unitary geodesic would cross the principal-log branch cut.

    The usual remedy is to insert an intermediate waypoint and compose two
    shorter geodesics.
    """


class NonConvergenceError(RuntimeError):
    """A gradient flow ran out of iterations before reaching its tolerance.

    Carries the best iterate seen (``best``) and the flow report
    (``report``) so callers can inspect or resume.
    """

    def __init__(self, message: str, best=None, report=None):
        super().__init__(message)
        self.best = best
        self.report = report


class RefinementExhaustedError(RuntimeError):
    """Path refinement hit its subdivision cap; carries the best path found."""

    def __init__(self, message: str, best_path=None):
        super().__init__(message)
        self.best_path = best_path
