"""Exact invariant means on finite Boolean inverse monoids and related constructions."""

from . import af_tower, affine, bim, exact, means, paradox, pbij, rook, typemonoid
from .affine import AffineMap, PeriodicSet
from .bim import FiniteBIM, close, semisimple, symmetric
from .errors import ImeanError
from .means import MeanVector, check_axioms, solve
from .pbij import PartialBijection, SubsetIdempotent
from .rook import RookMatrix

__version__ = "0.1.0"

__all__ = [
    "AffineMap", "FiniteBIM", "ImeanError", "MeanVector", "PartialBijection", "PeriodicSet",
    "RookMatrix", "SubsetIdempotent", "af_tower", "affine", "bim", "check_axioms", "close",
    "exact", "means", "paradox", "pbij", "rook", "semisimple", "solve", "symmetric", "typemonoid",
]
