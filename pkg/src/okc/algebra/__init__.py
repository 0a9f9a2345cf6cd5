"""Exact integer and sparse polynomial arithmetic used throughout :mod:`okc`."""

from .poly import (
    Exps,
    NotAUnitError,
    Poly,
    Ring,
    RingMismatchError,
    monomial_key,
    poly_add,
    poly_invert_unit,
    poly_mul,
)
from .snf import (
    IntMatrix,
    QuotientBasis,
    RowLattice,
    SNFResult,
    identity,
    matmul,
    quotient_basis,
    smith_normal_form,
)

ZZ = Ring((), name="Z")

__all__ = [
    "Exps",
    "IntMatrix",
    "NotAUnitError",
    "Poly",
    "QuotientBasis",
    "Ring",
    "RingMismatchError",
    "RowLattice",
    "SNFResult",
    "ZZ",
    "identity",
    "matmul",
    "monomial_key",
    "poly_add",
    "poly_invert_unit",
    "poly_mul",
    "quotient_basis",
    "smith_normal_form",
]
