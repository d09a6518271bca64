"""Minimax fidelity, CB distance and related metrics for finite-dimensional quantum channels."""

from ._accel import NUMBA_ENABLED, backend_name
from .channels import (
    KrausChannel,
    OperationalDensity,
    apply_heisenberg,
    apply_schrodinger,
    choi_state,
    compose,
    depolarizing,
    dephasing,
    identity_channel,
    make_channel,
    mixture_channel,
    operational_density,
    unitary_channel,
)
from .classical import (
    POVM,
    FiniteKernel,
    classical_fidelity,
    classical_hellinger,
    cq_fidelity,
    kernel_minimax_fidelity,
    make_kernel,
    make_povm,
    qc_povm_fidelity,
)
from .closedforms import (
    SpectrumHull,
    gaussian_noise_fidelity,
    lindblad_channel,
    lindblad_infinitesimal_fidelity,
    random_unitary_fidelity_bound,
    unitary_cb_distance,
    unitary_minimax_fidelity,
)
from .errors import ChainViolation, ChanmetricError, NoConvergence, ValidationError
from .metrics import (
    MinimaxResult,
    bures_distance,
    cb_distance,
    effect_distance_sup,
    effect_fidelity_distance,
    entangled_channel_fidelity,
    hellinger_channel_distance,
    hellinger_pointwise_distance,
    minimax_fidelity,
    pointwise_minimax_fidelity,
    state_fidelity,
    trace_distance,
)
from .optimize import OptConfig, OptResult, maximize_over_pure_states, minimize_over_pure_states
from .qbc import CommitmentProtocol, alice_cheat_lower_bound, bob_cheat_probability, impossibility_report

__version__ = "0.1.0"
