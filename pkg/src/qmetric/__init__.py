"""Distances between pure quantum states, an axiom-conformance harness and experiment suites."""
from .errors import (
    CandidateError,
    DimensionError,
    FactorizationMismatch,
    FormatError,
    InvalidPovm,
    NormalizationError,
    ProfileViolation,
    QmetricError,
    RangeError,
    ZeroVectorError,
)
from .hilbert import (
    BipartiteState,
    Ray,
    SchmidtDecomposition,
    basis_state,
    canonicalize,
    child_seed,
    entanglement_entropy,
    haar_state,
    haar_states,
    haar_unitary,
    inner_product,
    make_rng,
    normalize,
    overlap,
    partial_trace,
    schmidt,
    tensor_product,
    von_neumann_entropy,
)
from .metrics import (
    BURES_PROFILE,
    FS_PROFILE,
    LINEAR_PROFILE,
    DistanceCandidate,
    OverlapProfile,
    complementarity_value,
    d_bures,
    d_entanglement_aware,
    d_fs,
    d_hilbert,
    d_trace_pure,
    distance_from_profile,
    fidelity,
    measurement_distance_l1,
    measurement_distance_l2,
    profile_additivity_defect,
    scaled_fs_profile,
)
from .operational import DiscriminationResult, QfiEstimate, fs_from_popt, helstrom, qfi_finite_difference
from .povm import Povm, basis_povm, random_povm
from .harness import Axiom, AxiomVerdict, ConformanceConfig, ConformanceReport, Flag, Status, run_conformance

__version__ = "0.1.0"
