"""Exact computations with 0-dimensional subschemes of projective space.

Build a scheme from points, primary components or a homogeneous ideal, then
compute its Hilbert function, Kaehler and Noether differents, conductor and
separators, and decide generic position, the Cayley-Bacharach property,
(locally) Gorenstein and complete intersection.
"""

from .fields import QQ, DEFAULT_PRIME, ModInt, PrimeField, field_from_spec
from .poly import PolyRing, Polynomial, PolynomialSyntaxError, affine_ring, projective_ring
from .groebner import Ideal, buchberger, colon, eliminate, intersection, normal_form, saturate_x0
from .scheme import (
    HilbertTable,
    PointComponent,
    SchemeError,
    SchemeSpec,
    build_scheme,
    generic_position_check,
    hilbert_function,
    local_ring,
)
from .differents import (
    GradedIdealView,
    StabilizationError,
    different_inclusions,
    graded_ideal_hilbert,
    kaehler_different,
    local_kaehler_different,
    noether_different,
    noether_different_colon,
)
from .structure import (
    Analysis,
    ClassificationReport,
    ConductorProfile,
    cb_rank_criterion,
    cb_test,
    classify,
    conductor,
    genpos_equivalence_check,
    itilde_frame,
    mu_value,
    separators,
)
from .estimator import SchemeAnalyzer, check_points

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "DEFAULT_PRIME",
    "ModInt",
    "PrimeField",
    "field_from_spec",
    "PolyRing",
    "Polynomial",
    "PolynomialSyntaxError",
    "affine_ring",
    "projective_ring",
    "Ideal",
    "buchberger",
    "colon",
    "eliminate",
    "intersection",
    "normal_form",
    "saturate_x0",
    "HilbertTable",
    "PointComponent",
    "SchemeError",
    "SchemeSpec",
    "build_scheme",
    "generic_position_check",
    "hilbert_function",
    "local_ring",
    "GradedIdealView",
    "StabilizationError",
    "different_inclusions",
    "graded_ideal_hilbert",
    "kaehler_different",
    "local_kaehler_different",
    "noether_different",
    "noether_different_colon",
    "Analysis",
    "ClassificationReport",
    "ConductorProfile",
    "cb_rank_criterion",
    "cb_test",
    "classify",
    "conductor",
    "genpos_equivalence_check",
    "itilde_frame",
    "mu_value",
    "separators",
    "SchemeAnalyzer",
    "check_points",
]
