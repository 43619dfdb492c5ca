"""Exception hierarchy shared by every solver in the package."""


class ConsensusError(Exception):
    """Base class for all errors raised by mutualcons."""


class ValidationError(ConsensusError, ValueError):
    """An input violates a documented invariant (range, sum, length...)."""


class DimensionError(ValidationError):
    """Vectors that must share a length do not."""


class PreconditionError(ValidationError):
    """A solver was called outside the hypotheses it relies on."""


class SizeGuardError(ValidationError):
    """The instance is too large for an exhaustive method."""


class InfeasibleError(ConsensusError):
    """The constraint set admits no point."""


class SolverError(ConsensusError, RuntimeError):
    """The numerical solver failed (iteration limit, lost feasibility)."""
