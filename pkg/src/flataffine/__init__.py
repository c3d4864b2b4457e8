"""Exact-arithmetic toolkit for flat affine geometry.

Verifies and computes the algebraic objects attached to flat affine
connections: left-symmetric algebras, the associative product induced on
infinitesimal affine transformations, and the associative envelope of a
left-symmetric algebra.  Every computation runs over exact rationals.
"""
from .algebra import (
    CheckReport,
    JacobiError,
    LieAlgebraSC,
    SCAlgebra,
    Subspace,
    adjoin_unit,
    check_associative,
    check_left_symmetric,
    commutator_algebra,
    is_unit,
    left_mult_matrix,
    opposite,
    restrict_to_subspace,
    subalgebra_closure,
)
from .envelope import (
    EnvelopeReport,
    compute_envelope,
    verify_bi_invariant_criterion,
)
from .geometry import (
    Connection,
    Frame,
    IATReport,
    IATViolationError,
    NotFlatError,
    NotInSpanError,
    SingularFrameError,
    TensorReport,
    VectorField,
    connection_from_frame,
    covariant_derivative,
    curvature,
    express_in_basis,
    is_flat_affine,
    is_infinitesimal_affine,
    lie_bracket,
    product_table,
    solve_iat_ansatz,
    torsion,
)
from .symcore import (
    Chart,
    ChartMismatchError,
    ExpressionError,
    Polynomial,
    Rational,
    RationalFunction,
    UnknownVariableError,
    differentiate,
    parse_expr,
)

__version__ = "0.1.0"

__all__ = [
    "Chart",
    "ChartMismatchError",
    "CheckReport",
    "Connection",
    "EnvelopeReport",
    "ExpressionError",
    "Frame",
    "IATReport",
    "IATViolationError",
    "JacobiError",
    "LieAlgebraSC",
    "NotFlatError",
    "NotInSpanError",
    "Polynomial",
    "Rational",
    "RationalFunction",
    "SCAlgebra",
    "SingularFrameError",
    "Subspace",
    "TensorReport",
    "UnknownVariableError",
    "VectorField",
    "adjoin_unit",
    "check_associative",
    "check_left_symmetric",
    "commutator_algebra",
    "compute_envelope",
    "connection_from_frame",
    "covariant_derivative",
    "curvature",
    "differentiate",
    "express_in_basis",
    "is_flat_affine",
    "is_infinitesimal_affine",
    "is_unit",
    "left_mult_matrix",
    "lie_bracket",
    "opposite",
    "parse_expr",
    "product_table",
    "restrict_to_subspace",
    "solve_iat_ansatz",
    "subalgebra_closure",
    "torsion",
    "verify_bi_invariant_criterion",
]
