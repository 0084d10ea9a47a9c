"""Salvetti cochain complexes for Artin groups of type A, B, D and affine B.

Exact (q, t)-local-system cohomology under field and PID specializations,
closed-form predictors for it, and chamber enumeration for the simplicial
arrangement used in the K(pi, 1) argument.
"""

from .arrangement import build_lemma_arrangement, enumerate_chambers, is_simplicial
from .coxeter import CoxeterGraph, build_graph, parse_subset
from .errors import (
    ArtinCohomError,
    BadArg,
    BadInclusion,
    BadSpecialization,
    Failed,
    InternalInconsistency,
    NotDivisible,
    RankTooSmall,
    TooLarge,
    Unsupported,
)
from .fields import Point
from .homology import PIDSlice, cohomology_at, cohomology_pid, generic_dims
from .laurent import LaurentPoly
from .modules import ModuleExpr, tor_corrected_dims
from .poincare import poincare, poincare_oracle
from .salvetti import (
    CochainComplex,
    augmented_tilde_b,
    build_complex,
    build_G1,
    build_oC,
    split_sigma,
)
from .verify import verify

__version__ = "0.1.0"

__all__ = [
    "ArtinCohomError", "BadArg", "BadInclusion", "BadSpecialization", "CochainComplex",
    "CoxeterGraph", "Failed", "InternalInconsistency", "LaurentPoly", "ModuleExpr",
    "NotDivisible", "PIDSlice", "Point", "RankTooSmall", "TooLarge", "Unsupported",
    "augmented_tilde_b", "build_G1", "build_complex", "build_graph", "build_lemma_arrangement",
    "build_oC", "cohomology_at", "cohomology_pid", "enumerate_chambers", "generic_dims",
    "is_simplicial", "parse_subset", "poincare", "poincare_oracle", "split_sigma",
    "tor_corrected_dims", "verify",
]
