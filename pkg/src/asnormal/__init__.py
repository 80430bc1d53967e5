"""Exact verification of projective normality for Artin-Schreier curves."""

from .curve import (
    CurveParams,
    Monomial,
    NEG_INF,
    RingElement,
    RrBasis,
    embedding_h0_drop_check,
    make_curve,
    multiply,
    pole_order,
    pure_power_curve,
    reduce,
    rr_basis,
    rr_dim,
    semigroup_gaps,
)
from .gf import FieldElement, FieldSpec, make_field
from .linalg import GfMatrix, kernel_dim, is_surjective_onto_rows, rank, solve_in_column_space

__version__ = "0.1.0"
