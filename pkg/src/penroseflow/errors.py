"""Exception taxonomy shared by all pipeline stages."""


class PenroseflowError(Exception):
    """Base class for toolkit errors."""


class DomainError(PenroseflowError, ValueError):
    """Arguments outside the mathematical domain of an operation."""


class ConstructionError(PenroseflowError):
    """A data-set family could not be built (extremal or naked parameters)."""


class PreconditionError(PenroseflowError):
    """Input data violate a pipeline precondition (DEC, horizon type, R >= 0, ...)."""


class AsymptoticsError(PenroseflowError):
    """A tail fit or extrapolated limit did not converge."""


class SolverBlowupError(PenroseflowError):
    """The Jang slope left the admissible band |v| < 1 at interior points."""


class StiffnessError(PenroseflowError):
    """Step-size underflow in an adaptive integration."""


class FlowError(PenroseflowError):
    """Inverse-mean-curvature or conformal flow lost its structural invariants."""
