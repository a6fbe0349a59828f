"""Entanglement, coherence and intrinsic concurrence of two-qubit states.

Intrinsic concurrence ``C_I = sqrt(Tr(rho rho~))`` and first-order coherence
``D`` always satisfy ``C_I^2 + D^2 = Tr(rho^2)``.
"""
from .channels import ChannelKind, ChannelSweep, closed_form_ratio, dilation_unitary, evolve, sweep
from .decomposition import (
    ExtremalPair,
    TildeEnsemble,
    extremal_transforms,
    tilde_decompose,
    verify_theorem1,
)
from .errors import (
    BadParameter,
    DefectiveSpectrum,
    DegenerateDecomposition,
    InvalidState,
    NoConvergence,
    NotHermitian,
    NotPSD,
    NotTildeOrthogonal,
    SingularRatio,
    TradeoffError,
)
from .linalg import BACKEND, herm_eigen, herm_sqrt, rho_rhotilde_eigen
from .measures import (
    ResourceReport,
    check_rank_condition,
    concurrence,
    concurrence_pure,
    first_order_coherence,
    intrinsic_concurrence,
    report,
)
from .states import (
    FanoForm,
    PureState,
    TwoQubitState,
    from_fano,
    partial_trace,
    purity,
    sample_random,
    spin_flip,
    spin_flip_pure,
    to_fano,
)

__version__ = "0.1.0"
