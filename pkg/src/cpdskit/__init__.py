"""cpdskit: comprehensive primary decomposition systems for parametric ideals over Q."""

from .ring import RingContext, Monomial, BlockOrder, LEX, GREVLEX
from .poly import Polynomial, poly_arith, exact_divide
from .errors import (CpdsError, RingMismatch, NotZeroDimensional, KroneckerBound,
                     StratumSplitNeeded, GenericPositionFailure, SaturationCap)

__all__ = [
    "RingContext", "Monomial", "BlockOrder", "LEX", "GREVLEX",
    "Polynomial", "poly_arith", "exact_divide",
    "CpdsError", "RingMismatch", "NotZeroDimensional", "KroneckerBound",
    "StratumSplitNeeded", "GenericPositionFailure", "SaturationCap",
]
