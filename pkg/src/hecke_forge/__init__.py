"""Exact and numeric tools for Hecke groups, box domains, Gamma_0(N), Dunkl operators and Jack polynomials."""

__version__ = "0.1.0"

from .algebraic import (
    AlgebraicNumber,
    HalfPlanePoint,
    MoebiusMap,
    hyperbolic_distance,
    lambda_q,
    minimal_polynomial,
    moebius_apply,
    moebius_compose,
    real_embed,
)
from .congruence import Gamma0Data, classify_genus, coset_reps, gamma0_invariants, projective_line
from .domains import BoxDomain, GradingLocus, Tile, classify_point, contains, grading_positions, make_domain, tile
from .dunkl import (
    Partition,
    dunkl_apply,
    dunkl_commutator,
    inner_product_alpha,
    jack_expand,
    jack_monomial_coefficients,
    jack_polynomial,
    partitions,
)
from .errors import (
    ConsistencyError,
    DomainError,
    ExpressionError,
    FieldMismatchError,
    HeckeForgeError,
    ReductionError,
    UnsupportedGradingError,
)
from .hecke import HeckeWord, discreteness_probe, parse_word, reduce_point, word_apply, word_inverse, word_multiply, word_to_matrix
from .invariants import EtaSeries, eta_convergence, eta_partial, fock_coefficients, spin_classification
from .polynomials import MultiPoly, parse_poly
from .render import RenderSpec, render_domain_svg
