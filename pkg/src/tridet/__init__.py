"""Exact arithmetic checks for three structured determinant families and related permanents."""

from .exact import ExactError, QuadExt
from .families import FamilyId, gen
from .matrix import Poly, RingMatrix, charpoly, det_bareiss, det_cofactor, matvec, rank

__all__ = [
    "ExactError",
    "FamilyId",
    "Poly",
    "QuadExt",
    "RingMatrix",
    "charpoly",
    "det_bareiss",
    "det_cofactor",
    "gen",
    "matvec",
    "rank",
]

__version__ = "0.1.0"
