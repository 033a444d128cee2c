"""Exact computer algebra for the type-Q web calculus.

Evaluates web diagrams to exact matrices over Q(i, sqrt(2)), computes in the
Sergeev algebra (clasps, odd Jucys-Murphy quasi-idempotents), enumerates
shifted Littlewood-Richardson tableaux, and machine-checks the identity
catalog at desk scale.
"""

from .scalars import I, ISQRT2, ONE, SQRT2, ZERO, Scalar, format_scalar, parse_scalar
from .linalg import (
    GradedBasis,
    SuperMatrix,
    mat_add,
    mat_compose,
    mat_identity,
    mat_inverse,
    mat_rank,
    mat_scale,
    mat_tensor,
    mat_zero,
    matrix_to_json,
    solve_null,
    supertrace,
    tensor_basis,
)
from .sergeev import (
    SergeevElt,
    a_lambda,
    b_lambda,
    clasp,
    e_lambda,
    format_elt,
    gen_c,
    gen_s,
    parse_elt,
    pi,
    staircase,
    tau,
)
from .tableaux import (
    ShiftedTableau,
    lattice_property,
    lr_coefficient,
    p_product_coefficients,
    schur_p,
    staircase_tableau,
    strict_partitions,
    verify_staircase_construction,
)
from . import webs
from .webs import ObjectWord, parse_dsl, format_expr, typecheck
from .evaluate import (
    eval_basis,
    eval_combo,
    eval_web,
    hom_dim,
    psi_action,
    qn_generator_action,
    supercommutes,
    sym_basis,
    sym_dim,
    xi_image,
)
