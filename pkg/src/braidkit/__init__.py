"""Exact computations with braided vector spaces, quantum shuffle bialgebras
and braided symmetric/enveloping algebras."""

from .braided import (
    ALL_MARKS,
    BracketMap,
    BraidedSpace,
    HeckeReport,
    check_antisymmetry,
    check_bracket_compat,
    check_braid_equation,
    check_generalized_jacobi,
    check_hecke,
    check_hecke_jacobi,
    cross_bracket,
    diagonal_space,
    dj_hecke_space,
    enumerate_categorical,
    flip_space,
    gf8_unit_example,
    hecke_analysis,
    is_categorical,
    rescale,
    scalar_space,
    solve_compatible_brackets,
    zeta_map,
)
from .linalg import Mat, Subspace, image, kernel, rank
from .quotients import (
    FilteredQuotient,
    GradedQuotientAlgebra,
    check_X_primitive,
    enveloping_algebra,
    gamma_check,
    gr_prime,
    infinitesimal_bracket,
    iota_injective,
    nichols_algebra,
    symmetric_algebra,
    theta_map,
    type_one_check,
)
from .scalars import (
    GF8,
    QQ,
    Field,
    PrimeField,
    Scalar,
    field_from_string,
    is_regular,
    q_binom,
    q_factorial,
    q_int,
)
from .tensor import (
    GradedVector,
    TruncatedBraidedBialgebra,
    TruncatedTensorBialgebra,
    coradical_filtration,
    extend_algebra_map,
    gr_of_filtration,
    multiply,
    primitives,
    validate_graded_bialgebra,
)
from .theorems import (
    THEOREM_IDS,
    TheoremReport,
    bracket_triviality_sweep,
    verify_bracket_triviality,
    verify_categorical_rigidity,
    verify_milnor_moore,
    verify_symmetric_strictness,
    verify_type_one_equivalence,
)

__version__ = "0.1.0"
