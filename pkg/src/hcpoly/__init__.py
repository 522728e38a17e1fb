"""Polynomial algebra over the quaternions and octonions.

Arithmetic, root enumeration and classification, exact and finite-difference
Jacobians, and topological-degree computations, with batch kernels that run
either JIT-compiled (numba) or as pure numpy (HCPOLY_BACKEND selects).
"""

from .algebra import (
    OCTONIONS,
    QUATERNIONS,
    Algebra,
    AlgebraMismatchError,
    Element,
    complex_representative,
    conjugate,
    embed_complex,
    get_algebra,
    inverse,
    matrix_rep,
    multiply,
    norm,
    nth_root,
    random_element,
    right_matrix_rep,
    similarity_check,
    similarity_witness,
)
from .backend import backend_name
from .degree import (
    DegreeReport,
    nonregular_demo,
    poly_map_degree,
    product_degree_additivity,
    sphere_power_degree,
    sphere_product_additivity,
)
from .jacobian import (
    block_matrix_a,
    det_identity_lhs,
    det_identity_rhs,
    exact_jacobian,
    exact_jacobian_many,
    fd_jacobian,
    jacobian_sign,
    lemma_matrix_check,
)
from .parsing import ParseError, format_element, format_polynomial, parse_element, parse_polynomial
from .polynomial import GeneralMonomial, Polynomial, pointwise_product
from .roots import (
    ClassRoot,
    RootRecord,
    classify_and_multiplicity,
    descent_step,
    factor_linear_chain,
    find_roots,
    is_simple_root,
    newton_refine,
    real_poly_complex_roots,
    reconvolve,
)

__version__ = "0.1.0"
