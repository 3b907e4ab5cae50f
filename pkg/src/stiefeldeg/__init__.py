"""Exact signature formulas for Stiefel-valued polynomial frames and Whitney intersection numbers."""

__version__ = "0.1.0"

from .errors import (
    DegenerateForm,
    HypothesisFailure,
    NotZeroDimensional,
    OracleError,
    PivotMinorDegenerate,
    ResourceLimitExceeded,
    SignTooCloseToZero,
    SolverIncomplete,
    StiefelError,
    ValidationError,
)
from .groebner import GroebnerBasis, QuotientAlgebra, buchberger, is_zero_dimensional, normal_form, quotient_algebra
from .immersion import ImmersionProblem, IntersectionResult, build_alpha, intersection_number
from .polycore import GREVLEX, LEX, MonomialOrder, PolyMatrix, Polynomial, RationalMatrix, Ring
from .polyparse import ParseError, format_poly, parse_poly
from .quadform import Inertia, SymmetricForm, inertia, signature, trace_form
from .stiefel import (
    HypothesisReport,
    LambdaReport,
    RetryPolicy,
    StiefelProblem,
    compute_lambda,
    prepare,
    verify_hypotheses,
)

__all__ = [
    "__version__",
    "DegenerateForm",
    "HypothesisFailure",
    "NotZeroDimensional",
    "OracleError",
    "PivotMinorDegenerate",
    "ResourceLimitExceeded",
    "SignTooCloseToZero",
    "SolverIncomplete",
    "StiefelError",
    "ValidationError",
    "GroebnerBasis",
    "QuotientAlgebra",
    "buchberger",
    "is_zero_dimensional",
    "normal_form",
    "quotient_algebra",
    "ImmersionProblem",
    "IntersectionResult",
    "build_alpha",
    "intersection_number",
    "GREVLEX",
    "LEX",
    "MonomialOrder",
    "PolyMatrix",
    "Polynomial",
    "RationalMatrix",
    "Ring",
    "ParseError",
    "format_poly",
    "parse_poly",
    "Inertia",
    "SymmetricForm",
    "inertia",
    "signature",
    "trace_form",
    "HypothesisReport",
    "LambdaReport",
    "RetryPolicy",
    "StiefelProblem",
    "compute_lambda",
    "prepare",
    "verify_hypotheses",
]
