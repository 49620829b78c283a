"""Exception hierarchy for pearcey-gap."""


class PearceyGapError(Exception):
    """Base class for all library errors."""


class QuadratureError(PearceyGapError):
    """Panel refinement was exhausted before reaching the target accuracy."""

    def __init__(self, message: str, achieved: float, target: float):
        super().__init__(f"{message} (achieved {achieved:.3e}, target {target:.3e})")
        self.achieved = achieved
        self.target = target


class BranchError(PearceyGapError, ValueError):
    """A point sits on a cut or ray where the requested value is ambiguous."""


class DomainError(PearceyGapError, ValueError):
    """An argument violates the operation's precondition."""


class DiscretizationError(PearceyGapError):
    """The Nyström system is singular or its determinant is not positive."""


class FitError(PearceyGapError):
    """The constant fit is under-sampled or ill-conditioned."""


class ContourIntegralError(PearceyGapError):
    """Contour coefficient extraction did not converge."""
