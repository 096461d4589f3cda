"""Exception types shared across the package."""


class LatticeError(Exception):
    """Base class for all lattice-euclid errors."""


class DimensionMismatchError(LatticeError):
    """Operands have incompatible shapes."""


class SingularMatrixError(LatticeError):
    """A square system has no unique solution."""


class SingularUpdateError(LatticeError):
    """A column replacement would make the cached inverse's matrix singular."""


class IntegralPivotError(LatticeError):
    """The requested pivot coordinate has no fractional part."""


class SpanMismatchError(LatticeError):
    """A vector lies outside the rational column span it was solved against."""


class ExhaustedRetriesError(LatticeError):
    """Random instance generation hit its retry limit."""


class InvariantViolationError(LatticeError):
    """An internal run invariant failed; indicates a bug, not bad input."""
