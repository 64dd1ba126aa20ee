"""Exception types shared across the package."""


class CpdsError(Exception):
    """Base class for all library errors."""


class RingMismatch(CpdsError):
    """Operands live in different ring contexts."""


class NotZeroDimensional(CpdsError):
    """An operation required a zero-dimensional ideal."""


class KroneckerBound(CpdsError):
    """Kronecker substitution would exceed the configured degree bound."""

    def __init__(self, degree, bound):
        super().__init__(f"Kronecker image degree {degree} exceeds bound {bound}")
        self.degree = degree
        self.bound = bound


class StratumSplitNeeded(CpdsError):
    """A nonvanishing requirement collapsed into the stratum ideal."""


class GenericPositionFailure(CpdsError):
    """No generic-position element found within the candidate budget."""


class SaturationCap(CpdsError):
    """Saturation exponent search exceeded its cap."""
