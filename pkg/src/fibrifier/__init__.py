"""Finite categories, fibrations, their Chevalley criteria and fibrewise factorizations."""
from .core import FinCat, Functor, NatTrans, validate
from .errors import (CapExceeded, FibrifierError, IncoherentPseudoFunctor, NotAFibration,
                     NotFibrewiseOpfibration, NotIsofibration)

__all__ = ["FinCat", "Functor", "NatTrans", "validate", "CapExceeded", "FibrifierError",
           "IncoherentPseudoFunctor", "NotAFibration", "NotFibrewiseOpfibration",
           "NotIsofibration"]
__version__ = "0.1.0"
