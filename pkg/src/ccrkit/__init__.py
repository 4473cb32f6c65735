"""Clifford-Cauchy-Riemann decomposition of the Dirac operator in Cl(p,q)."""

from .algebra import (
    GradeError,
    Multivector,
    Signature,
    SignatureMismatch,
    blade_product,
    dot,
    dual,
    even_part,
    geometric_product,
    grade_involution,
    grade_project,
    odd_part,
    pseudoscalar_inverse,
    reverse,
    wedge,
)
from .ccr import (
    CcrReport,
    ccr_residuals,
    dual_ccr_check,
    harmonic_check,
    is_monogenic,
    midgrade_duality_residual,
)
from .fields import (
    MultivectorField,
    NumericField,
    coordinate,
    dalembertian,
    derivative_split,
    numeric_vector_derivative,
    position_vector,
    vector_derivative,
)
from .fieldfile import parse_field_file, serialize_field_file
from .poly import Polynomial

__all__ = [
    "CcrReport",
    "GradeError",
    "Multivector",
    "MultivectorField",
    "NumericField",
    "Polynomial",
    "Signature",
    "SignatureMismatch",
    "blade_product",
    "ccr_residuals",
    "coordinate",
    "dalembertian",
    "derivative_split",
    "dot",
    "dual",
    "dual_ccr_check",
    "even_part",
    "geometric_product",
    "grade_involution",
    "grade_project",
    "harmonic_check",
    "is_monogenic",
    "midgrade_duality_residual",
    "numeric_vector_derivative",
    "odd_part",
    "parse_field_file",
    "position_vector",
    "pseudoscalar_inverse",
    "reverse",
    "serialize_field_file",
    "vector_derivative",
    "wedge",
]
