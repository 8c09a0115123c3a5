"""Exact computation of dicritical divisors of plane rational functions.

The library models bivariate polynomials over computable field towers,
monomial and divisorial valuations given by blow-up chains, residues in
K'(t), Newton polygon classification of residue regenerability, and the
resolution of pencil base points including points at infinity. Everything
is exact; there is no floating point anywhere.
"""

from .errors import DicritError
from .field import QQ, ExtensionField, FieldElement, PrimeField, UniPoly

__all__ = [
    "DicritError",
    "QQ",
    "ExtensionField",
    "FieldElement",
    "PrimeField",
    "UniPoly",
]

__version__ = "0.1.0"
