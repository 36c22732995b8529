"""Combinatorial Laplacians, relative homology and spanning trees of simplicial complex pairs."""

from .complex_core import (
    ComplexPair,
    SimplicialComplex,
    discrete_boundary,
    flag_complex,
    from_facets,
    generate,
    join,
    link,
    missing_face_dim,
    skeleton,
)
from .errors import BudgetExceeded, DomainError, InvariantViolation, RelapError

__all__ = [
    "BudgetExceeded",
    "ComplexPair",
    "DomainError",
    "InvariantViolation",
    "RelapError",
    "SimplicialComplex",
    "discrete_boundary",
    "flag_complex",
    "from_facets",
    "generate",
    "join",
    "link",
    "missing_face_dim",
    "skeleton",
]
