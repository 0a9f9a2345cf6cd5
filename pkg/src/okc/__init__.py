"""Exact computations with formal group laws, the Lazard ring and the
connective K-theory of multiprojective spaces."""

__version__ = "0.1.0"

from .algebra import Poly, Ring, ZZ, smith_normal_form, quotient_basis
from .fgl import (
    ZZ_BETA,
    FormalGroupLaw,
    TruncSeries,
    fgl_additive,
    fgl_multiplicative,
    formal_inverse,
    formal_sum,
    multi_sum,
    n_series,
    reconstruct,
    support_decompose,
    verify_associativity,
)
from .lazard import LazardRing, RingMap, apply_map, classifying_map, lazard_truncation, universal_fgl
from .proj import BMClass, ConnectiveClass, MultiProj, chern_operator, connective_group, gr_map
from .divisor import SNCConfig, divisor_class, verify_divclass, verify_recursion
from .comparison import (
    CompleteIntersection,
    fundamental_class_CK,
    fundamental_triple,
    theta_plus,
    theta_times,
    verify_fundamental_triangle,
)
