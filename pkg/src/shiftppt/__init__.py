"""Separability of rank-3 cyclic-shift states on two qutrits.

For this family a state is separable exactly when its partial transpose is
positive. The package tests PPT both numerically and through closed-form
conditions, and builds an explicit product-state decomposition when it holds.
"""

__version__ = "0.1.0"

from .linalg import (
    adjoint,
    hermitian_eigenvalues,
    identity,
    is_psd,
    kron,
    mat_mul,
    matrix_rank,
    outer,
    partial_transpose,
    singular_values,
)
from .states import (
    GeneralShiftParams,
    InvalidParamsError,
    ShiftStateParams,
    build_density,
    build_density_general,
    build_shift_vector,
    normalize_triple,
    permutation_matrix,
    symmetric_params,
)
from .ppt import (
    PptReport,
    extract_blocks,
    extract_phases,
    inequality_residuals,
    magnitude_invariants,
    ppt_analytic,
    ppt_numeric,
)
from .decomposition import (
    EntangledDistillable,
    NotPptError,
    RankOneFailure,
    Separable,
    SeparableDecomposition,
    build_coefficient_matrices,
    build_unitary,
    classify,
    decompose,
    rank_one_factor,
    solve_mixing_phases,
    verify_decomposition,
)
from .generator import GeneratorConfig, GeneratorExhausted, generate, sample_ppt, sample_random, sweep
