"""Logarithmic co-Higgs fields from Harder-Narasimhan data.

Slope criteria work on any curve; on P1 bundles split and everything is
computed explicitly with exact rational arithmetic.
"""
from .errors import CoHiggsError, UsageError, ValidationError
from .hn import CurveContext, HNData, validate_hn
from .p1 import CoHiggsFieldP1, ShiftedField, SplittingType

__version__ = "0.1.0"

__all__ = [
    "CoHiggsError",
    "UsageError",
    "ValidationError",
    "CurveContext",
    "HNData",
    "validate_hn",
    "CoHiggsFieldP1",
    "ShiftedField",
    "SplittingType",
]
