"""Exact rational sl2 R-matrices for arbitrary spin, with symbolic verification."""

from .exactalg import (
    ExactAlgError,
    ExactDivisionError,
    FactoredRat,
    LinForm,
    MPoly,
    PoleSpecializationError,
    RatFun,
    Rational,
    UnsupportedPoleOrderError,
    factored_expand,
    factored_sum,
    mpoly_arith,
    mpoly_exact_div,
    ratfun_eq,
    residue_at,
    specialize,
)
from .moduli import (
    DegeneratePatchError,
    DomainError,
    FixedPoint,
    WeightTable,
    complete_intersection_coeff,
    dim_M1,
    duality_involution,
    fixed_points,
    fp_order,
    patch_weights,
    weight_space_dim,
)
from .oracle import (
    CasimirProjectors,
    Sl2Rep,
    casimir_projectors,
    coproduct,
    sl2_rep,
    spectral_decompose,
    verify_mobius_ratios,
    verify_sl2_commutation,
    verify_spectrum,
)
from .report import Report
from .rmatrix import (
    FullR,
    RBlock,
    assemble_full,
    lu_factors,
    rblock_closed,
    rblock_triangular,
    verify_equal_constructions,
    verify_unitarity_block,
    verify_unitarity_full,
    verify_ybe,
    ybe_trials,
)
from .stablebasis import (
    S_inverse,
    S_matrix,
    SymMatrix,
    class_S,
    class_Zbar,
    verify_inverse,
    verify_linrel,
    verify_residues,
    verify_residues_all,
)

__version__ = "0.1.0"
