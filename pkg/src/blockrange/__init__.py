"""Certified numerical-range geometry and positive block-matrix inequality checks."""

from .matcore import (
    BlockPSD,
    EigenSolverError,
    HermitianError,
    MatrixError,
    PositivityError,
    adjoint,
    assemble_block,
    block_psd,
    hermitian_eig,
    is_positive_semidefinite,
    j_congruence,
    phase_rotate_block,
    real_part,
)
from .majorize import (
    MajorizationReport,
    antinorm_dominance,
    block_diag_pinch,
    ky_fan_antinorm,
    ky_fan_norm,
    lemma1_direct_sum,
    majorization,
    pinch_to_diagonal,
    weak_majorization,
)
from .numrange import (
    RangeSummary,
    SupportSample,
    diameter,
    distance_to_zero,
    numerical_radius,
    refine_distance,
    sample_range,
    summarize,
    support_function,
    width,
)
from .theorems import (
    CheckReport,
    compute_rho,
    lemma2_construct,
    proof_trace,
    run_all_checks,
    theorem2_consequence,
    verify_main,
    verify_theorem1,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
