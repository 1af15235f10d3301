"""Exact few-particle interference, Hubbard dynamics and entanglement analysis."""

from .fock import (
    DensityMatrix,
    DimensionError,
    FockBasis,
    FockStateVector,
    OccupationVector,
    Statistics,
    enumerate_basis,
)
from .interference import (
    ModeUnitary,
    OutputDistribution,
    beamsplitter,
    bunching_enhancement,
    lift_to_fock,
    mach_zehnder_probs,
    output_distribution,
    transition_probability,
    two_mode_nn_distribution,
)
from .permanent import determinant, permanent, permanent_naive, permanent_ryser
from .distinguishability import (
    PhaseDistribution,
    overlap_from_dip,
    partial_overlap_probs,
    phase_averaged_state,
    rho_alpha,
)
from .hubbard import (
    Boundary,
    HubbardParams,
    build_hamiltonian,
    correlator,
    double_well_p11,
    doublon_walk,
    evolve,
    fermi_double_well_dynamics,
    lattice_propagator,
    lmg_distribution,
)
from .entanglement import (
    BipartiteCut,
    TwoParticleAmplitude,
    csop_check,
    entropies,
    hubbard_bs_phase_correction,
    particle_entangled,
    postselected_spin_entanglement,
    quench_entropy_trace,
    reduced_density_matrix,
    schmidt_spectrum,
    twin_parity_purity,
)
from .config import ScenarioConfig
from .scenarios import sample_outcomes

__version__ = "0.1.0"
