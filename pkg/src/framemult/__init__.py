"""framemult: a numerical laboratory for frame multipliers on C^d.

Build multipliers from a symbol and two frames, decide when the
reciprocal-symbol dual multiplier inverts them, decompose inverses against
arbitrary dual frames, and construct perturbation companions that leave the
realized operator unchanged. Everything is seeded and reproducible.
"""

from .errors import (
    ConfigInvalid,
    DimensionMismatch,
    FrameMultError,
    GenerationFailed,
    HypothesisViolated,
    InvalidDual,
    IoError,
    NotAFrame,
    NotHermitian,
    ParseError,
    Singular,
    ZeroEntry,
)
from .frames import (
    DualFrame,
    Frame,
    analysis,
    canonical_dual,
    equivalence_map,
    frame_bounds,
    is_riesz_basis,
    new_frame,
    proj_ker_synthesis,
    random_dual,
    scale_by_symbol,
    synthesis,
)
from .generators import (
    finite_gabor,
    harmonic_tight,
    onb,
    random_frame,
    random_symbol,
    riesz_basis,
)
from .linalg import (
    DEFAULT_TOL,
    Tol,
    approx_equal,
    as_matrix,
    herm_eig_extremes,
    inv,
    op_norm,
    pinv,
    rel_residual,
    sv_extremes,
)
from .multiplier import (
    Condition,
    InvDiag,
    Multiplier,
    Thm1Report,
    build,
    canonical_inverse_candidate,
    dagger_frames,
    invert,
    thm1_report,
)
from .perturbation import (
    PerturbReport,
    companion_per1,
    companion_per1_dual_side,
    companion_per2,
    companion_per3,
    random_frame_perturbation,
)
from .representations import (
    EquivalenceVerdict,
    RepResult,
    equivalence_criterion,
    gamma_of,
    sample_duals,
    theta_of,
    verify_gamma_decomposition,
    verify_theta_decomposition,
)
from .serialize import load_frame, save_frame, save_report
from .suites import (
    DEFAULT_DIMS,
    ExperimentConfig,
    SuiteReport,
    TrialRecord,
    run_suite,
    validate_config,
)
from .symbols import Symbol, classify, conj, modulus, new_symbol, perturb_symbol, reciprocal

__version__ = "0.1.0"

__all__ = [
    "Tol",
    "DEFAULT_TOL",
    "as_matrix",
    "op_norm",
    "herm_eig_extremes",
    "pinv",
    "sv_extremes",
    "inv",
    "rel_residual",
    "approx_equal",
    "Frame",
    "DualFrame",
    "new_frame",
    "analysis",
    "synthesis",
    "frame_bounds",
    "canonical_dual",
    "random_dual",
    "proj_ker_synthesis",
    "is_riesz_basis",
    "scale_by_symbol",
    "equivalence_map",
    "Symbol",
    "new_symbol",
    "classify",
    "reciprocal",
    "conj",
    "modulus",
    "perturb_symbol",
    "Multiplier",
    "InvDiag",
    "Condition",
    "Thm1Report",
    "build",
    "invert",
    "canonical_inverse_candidate",
    "dagger_frames",
    "thm1_report",
    "RepResult",
    "EquivalenceVerdict",
    "gamma_of",
    "verify_gamma_decomposition",
    "theta_of",
    "verify_theta_decomposition",
    "equivalence_criterion",
    "sample_duals",
    "PerturbReport",
    "random_frame_perturbation",
    "companion_per1",
    "companion_per1_dual_side",
    "companion_per2",
    "companion_per3",
    "onb",
    "harmonic_tight",
    "finite_gabor",
    "random_frame",
    "riesz_basis",
    "random_symbol",
    "save_frame",
    "load_frame",
    "save_report",
    "ExperimentConfig",
    "TrialRecord",
    "SuiteReport",
    "run_suite",
    "validate_config",
    "DEFAULT_DIMS",
    "FrameMultError",
    "DimensionMismatch",
    "NotHermitian",
    "Singular",
    "NotAFrame",
    "ZeroEntry",
    "HypothesisViolated",
    "InvalidDual",
    "GenerationFailed",
    "ConfigInvalid",
    "IoError",
    "ParseError",
]
