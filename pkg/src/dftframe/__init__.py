"""Systematic DFT frames: construction, subframe spectra, coset
classification, and quantized-codec simulation."""

from .errors import (
    ConstructionError,
    DftframeError,
    IllConditionedError,
    InsufficientDataError,
    InvalidArgumentError,
    ResourceLimitError,
    UnsupportedCodeError,
)
from .frames import (
    COMPLEX_BCH,
    GENERAL_DFT,
    REAL_BCH,
    VARIANTS,
    FrameSpec,
    GeneratorSet,
    dft_matrix,
    generator,
    gramian_entry,
    matrix_from_json,
    matrix_to_json,
    sigma_matrix,
)
from .spectra import (
    BoundReport,
    IndexSet,
    Spectrum,
    default_thread_count,
    det_gram_product_formula,
    gram_spectrum,
    hermitian_eigenvalues,
    sampled_sweep,
    sine_product_identity_residual,
    subframe,
    theorem_sweep,
    verify_bounds,
)
from .systematic import (
    DEFAULT_TIGHT_TOL,
    DistanceProfile,
    SystematicFrame,
    codeword_variance,
    distance_profile,
    is_tight,
    optimal_index_set,
    systematic_frame,
    worst_index_set,
)
from .cosets import (
    ENUMERATION_LIMIT,
    Coset,
    CosetCatalog,
    canonical_leader,
    count_bounds,
    enumerate_cosets,
    reversal,
    shift,
)
from .codec import (
    QUANTIZE_ONLY,
    QUANTIZE_PLUS_ERASURE,
    QUANTIZE_PLUS_ERROR,
    SCENARIO_KINDS,
    Quantizer,
    Scenario,
    SimReport,
    consistent_refine,
    encode,
    erasure_predicted_mse,
    erasure_reconstruct,
    linear_reconstruct,
    pseudoinverse,
    run_simulation,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "ConstructionError", "Coset", "CosetCatalog",
    "COMPLEX_BCH", "DEFAULT_TIGHT_TOL", "DftframeError", "DistanceProfile",
    "ENUMERATION_LIMIT", "FrameSpec", "GENERAL_DFT", "GeneratorSet",
    "IllConditionedError", "IndexSet", "InsufficientDataError",
    "InvalidArgumentError", "QUANTIZE_ONLY", "QUANTIZE_PLUS_ERASURE",
    "QUANTIZE_PLUS_ERROR", "Quantizer", "REAL_BCH", "ResourceLimitError",
    "SCENARIO_KINDS", "Scenario", "SimReport", "Spectrum", "SystematicFrame",
    "UnsupportedCodeError", "VARIANTS", "canonical_leader",
    "codeword_variance", "consistent_refine", "count_bounds",
    "default_thread_count", "det_gram_product_formula", "dft_matrix",
    "distance_profile", "encode", "enumerate_cosets", "erasure_predicted_mse",
    "erasure_reconstruct", "generator", "gram_spectrum", "gramian_entry",
    "hermitian_eigenvalues", "is_tight", "linear_reconstruct",
    "matrix_from_json", "matrix_to_json", "optimal_index_set",
    "pseudoinverse", "reversal", "run_simulation", "sampled_sweep",
    "shift", "sigma_matrix", "sine_product_identity_residual", "subframe",
    "systematic_frame", "theorem_sweep", "verify_bounds", "worst_index_set",
]
