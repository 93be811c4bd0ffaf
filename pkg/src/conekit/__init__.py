"""conekit: certification toolkit for cones of positive maps on M_d."""

from ._seesaw import NUMBA_ACTIVE, seesaw_minimize
from .certify import (
    Certificate,
    ConeReport,
    SeesawOpts,
    Verdict,
    classify,
    decomposable_certify,
    dual_pairing,
    is_ccp,
    is_cp,
    is_k_positive_certify,
    k_block_positive_certify,
    schmidt_number_bounds,
)
from .errors import (
    BadFamily,
    BadK,
    BadParam,
    BadRank,
    BlockNotPSD,
    ConekitError,
    DimMismatch,
    EmptyList,
    MissingDims,
    NotAState,
    NotCompletelyPositive,
    NotHermitian,
    NotHermiticityPreserving,
    NotPSD,
    RankTooHigh,
    ZeroVector,
)
from .linalg import (
    BipartiteVector,
    MatrixOp,
    SchmidtDecomposition,
    hermitian_eig,
    hs_inner,
    max_entangled,
    numerical_rank,
    partial_transpose,
    reshuffle,
    schmidt_decompose,
    schmidt_rank,
    swap_matrix,
    unreshuffle,
)
from .maps import (
    Detector,
    KrausSet,
    MapRep,
    ad,
    adjoint,
    apply,
    apply_on_right_factor,
    block_action,
    choi,
    co,
    compose,
    compose_certified,
    depolarizing,
    from_kraus,
    identity_map,
    kraus_decompose,
    map_from_choi,
    max_entangled_projector,
    random_cp_map,
    random_hp_map,
    random_k_positive_map,
    reduction_detectors,
    reduction_family,
    transpose_map,
)
from .witness import (
    DetectionResult,
    ScanPoint,
    Witness,
    detect_schmidt_number,
    expectation,
    isotropic_state,
    random_schmidt_bounded_state,
    threshold_scan,
    werner_state,
    witness_from_map,
)

__version__ = "0.1.0"
