"""Finite frame and fusion-frame analysis toolkit."""

__version__ = "0.1.0"

from .errors import (
    DegenerateInputError,
    DimensionError,
    FramekitError,
    GenerationError,
    NumericError,
    PreconditionError,
)
from .linalg import hermitian_eigenvalues, operator_norm, orthonormalize, singular_values
from .frames import (
    BoundsReport,
    Frame,
    RedundancyProfile,
    analysis_apply,
    frame_operator,
    is_riesz_basis,
    normalize_frame,
    optimal_frame_bounds,
    redundancy_at,
    redundancy_bounds,
    redundancy_oracle,
    synthesis_matrix,
)
from .fusion import (
    FusionFrame,
    Subspace,
    full_space,
    fusion_analysis_apply,
    fusion_frame_bounds,
    fusion_frame_operator,
    fusion_redundancy_at,
    fusion_redundancy_bounds,
    fusion_redundancy_oracle,
    fusion_synthesis_apply,
    is_orthonormal_fusion_basis,
    projection_matrix,
    subspace_from_spanning,
    vector_span,
)
from .perturb import (
    LambdaPerturbationVerdict,
    PerturbationReport,
    check_lambda_perturbation,
    frame_perturbation_mu,
    fusion_perturbation_mu,
    generate_perturbed_frame,
    generate_perturbed_fusion,
)
from .angles import (
    AngleReport,
    check_rs_relation,
    cosine_angles,
    gap_direct,
    orthogonal_complement,
    redundancy_angle_sums,
)
from .theorems import (
    SuiteConfig,
    SuiteReport,
    TheoremVerdict,
    replay_instance,
    run_random_suite,
    verify_angle_sums,
    verify_fusion_perturbed_bounds,
    verify_fusion_redundancy_perturbation,
    verify_normalized_perturbation,
    verify_perturbed_frame_bounds,
    verify_redundancy_perturbation,
    verify_riesz_redundancy,
)
