"""Quantum fuzzy sets: density-matrix membership, Q-Matrix sections and CPTP morphisms."""

from . import kernels
from .categorical import (
    QFSMorphism,
    QuantumChannel,
    cartesian_lift,
    channel_apply,
    channel_compose,
    channel_is_unitary,
    channel_make,
    channel_tensor,
    channels_equal,
    decoherence_morphism,
    dephasing_channel,
    factor_through_lift,
    frobenius_copy_defect,
    identity_channel,
    identity_morphism,
    morphism_compose,
    morphism_dagger,
    morphism_make,
    morphism_tensor,
    qfs_tensor,
    unit_qfs,
    unitary_channel,
)
from .core import (
    Basis,
    DensityMatrix,
    QMatrix,
    QuantumFuzzySet,
    bloch_vector,
    l1_coherence,
    make_density,
    membership,
    mutual_information,
    partial_trace,
    product_qmatrix,
    purity,
    qfs_decohere,
    qfs_is_classical,
    qfs_make,
    qmatrix_make,
    qmatrix_sections,
    realizes,
    von_neumann_entropy,
)
from .errors import QFSError
from .information import (
    POVM,
    Ensemble,
    bures_distance,
    fidelity,
    fidelity_matrix,
    holevo,
    povm_make,
    povm_measure,
    trace_distance,
)
from .tolerance import DEFAULT_TOL, ToleranceConfig

__version__ = "0.1.0"
