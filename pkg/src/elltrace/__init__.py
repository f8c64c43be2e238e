"""Exact traces of elliptic-curve points over simple field extensions.

Given E over K, an irreducible T in K[t] and a point P of E(K[t]/T), the
trace is the sum of the conjugates of P (times the inseparable degree),
a point of E(K).  Supported ground fields: Q, F_p and F_p(l) / Q(l).
"""

__version__ = "0.1.0"

from .curve import CurvePoint, WeierstrassCurve
from .exceptions import (
    ElltraceError,
    FieldMismatchError,
    GenerationError,
    InconsistentInputError,
    NotInSubfieldError,
    NotOnCurveError,
    ParseError,
    ReducibleModulusError,
    SingularCurveError,
)
from .extfield import Extension, ExtensionElement, is_irreducible, subfield_coeffs
from .fields import FieldScalar, PrimeField, RationalField, RationalFunctionField, field_from_description
from .linalg import Matrix, kernel_echelon, minimal_polynomial
from .oracle import InstanceGenerator, frobenius_trace, generate_instance
from .poly import Polynomial
from .trace import TraceProblem, TraceWitness, ell_trace, ell_trace_sep, insep_decompose, trace

__all__ = [
    "CurvePoint", "ElltraceError", "Extension", "ExtensionElement", "FieldMismatchError", "FieldScalar",
    "GenerationError", "InconsistentInputError", "InstanceGenerator", "Matrix", "NotInSubfieldError",
    "NotOnCurveError", "ParseError", "Polynomial", "PrimeField", "RationalField", "RationalFunctionField",
    "ReducibleModulusError", "SingularCurveError", "TraceProblem", "TraceWitness", "WeierstrassCurve",
    "ell_trace", "ell_trace_sep", "field_from_description", "frobenius_trace", "generate_instance",
    "insep_decompose", "is_irreducible", "kernel_echelon", "minimal_polynomial", "subfield_coeffs", "trace",
]
