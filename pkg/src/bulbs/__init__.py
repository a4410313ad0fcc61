"""Buttons-and-bulbs wirings over F_2: evaluation, constructions, closed forms,
and exhaustive oracles."""

from .formulas import a_of, closed_value, u_value
from .gf2 import BitMat, BitVec, SpanBasis
from .wiring import Wiring, evaluate_M, mean_weight, pivot

__all__ = ["BitMat", "BitVec", "SpanBasis", "Wiring", "a_of", "closed_value", "evaluate_M", "mean_weight", "pivot", "u_value"]
