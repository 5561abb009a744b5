"""SIC-POVM construction, Born-rule measurement and SIC-based probability updates."""

from .errors import (
    ArityError,
    DimensionError,
    ImpossibleOutcomeError,
    InconsistentDataError,
    NormalizationError,
    ProbabilityError,
    QBError,
    ReconstructionInfeasibleError,
    SicViolationError,
    SymmetryError,
    UnderdeterminedError,
)
from .ftp import (
    FtpComparison,
    classical_ftp,
    compare_ftp,
    is_coherent,
    qbist_ftp,
    quasi_priors,
    reconstruct_from_sic,
    reconstruct_linear_inversion,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    ValidationReport,
    eigen_hermitian,
    hs_inner,
    projector_from_vector,
    random_density,
    validate_density,
)
from .measurement import atomic_update, born, conditional_matrix, reference_probabilities
from .povm import Povm, SicPovm, check_sic, is_informationally_complete, sic_effects, validate_povm
from .sicsearch import (
    SearchConfig,
    SearchResult,
    displacement_operators,
    find_fiducial,
    frame_potential,
    known_fiducial,
    wh_orbit,
)

__version__ = "0.1.0"
