"""Two-mode parametric amplification with phase mismatch.

Closed-form mode dynamics and photon statistics (``core``), Gaussian
covariance matrices and entanglement measures (``gaussian``), a brute-force
truncated Fock-space oracle (``fock_oracle``), and a deterministic CLI
(``cli``).
"""

from .core import (
    BogoliubovCoeffs,
    Coherent,
    InitialState,
    ModelParams,
    PumpDepletionWarning,
    Thermal,
    Vacuum,
    bogoliubov_coefficients,
    mean_photon_numbers,
    mean_vector,
    photon_difference,
    squeezing_parameter,
)
from .gaussian import (
    CovarianceMatrix4,
    EntanglementReport,
    appendix_cm_crosscheck,
    assemble_cm,
    entanglement_entropy,
    entropy_f,
    full_report,
    log_negativity,
    ppt_min_symplectic,
    reduced_symplectic_eigenvalues,
    symplectic_eigenvalues,
)
from .fock_oracle import (
    DensityMatrix,
    FockSpec,
    MixtureMoments,
    OracleMoments,
    PREP_CUT_LIMIT,
    TAIL_GATE,
    TruncationError,
    build_hamiltonian,
    direct_entropy,
    direct_log_negativity,
    evolve,
    evolved_density,
    evolved_pure_state,
    evolved_pure_state_sparse,
    initial_density,
    initial_pure_state,
    measure,
    pure_entropy,
    pure_log_negativity,
    pure_moments,
    thermal_log_negativity,
    thermal_mixture_cm,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BogoliubovCoeffs",
    "Coherent",
    "InitialState",
    "ModelParams",
    "PumpDepletionWarning",
    "Thermal",
    "Vacuum",
    "bogoliubov_coefficients",
    "mean_photon_numbers",
    "mean_vector",
    "photon_difference",
    "squeezing_parameter",
    "CovarianceMatrix4",
    "EntanglementReport",
    "appendix_cm_crosscheck",
    "assemble_cm",
    "entanglement_entropy",
    "entropy_f",
    "full_report",
    "log_negativity",
    "ppt_min_symplectic",
    "reduced_symplectic_eigenvalues",
    "symplectic_eigenvalues",
    "DensityMatrix",
    "FockSpec",
    "MixtureMoments",
    "OracleMoments",
    "PREP_CUT_LIMIT",
    "TAIL_GATE",
    "TruncationError",
    "build_hamiltonian",
    "direct_entropy",
    "direct_log_negativity",
    "evolve",
    "evolved_density",
    "evolved_pure_state",
    "evolved_pure_state_sparse",
    "initial_density",
    "initial_pure_state",
    "measure",
    "pure_entropy",
    "pure_log_negativity",
    "pure_moments",
    "thermal_log_negativity",
    "thermal_mixture_cm",
]
