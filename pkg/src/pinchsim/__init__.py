"""Multiport scattering simulator for waveguide-fed pinching-antenna arrays.

Submodules:
    netcore    complex linear solve, scattering primitives, cascade reduction
    channel    geometry, pathloss models and wireless link coefficients
    pamodels   per-antenna scattering families and coupler reconfigurability
    system     end-to-end voltage ratios and channel gain
    optimize   ideal / coupler / baseline beamforming solvers
    config     experiment configuration (flat key=value files)
    sweeps     CSV-producing experiment runners
    cli        command-line interface
"""

from .channel import (
    ChannelState,
    FreeSpace,
    Geometry,
    PathlossModel,
    PowerLaw,
    channel_vector,
    distance,
    pa_abscissas,
    wavelength,
)
from .errors import (
    ConfigError,
    DegenerateChannelError,
    InfeasibleSpacingError,
    NonConvergenceError,
    SingularMatrixError,
)
from .netcore import (
    PortPartition,
    cascade_external,
    check_energy_conservation,
    impedance_to_scattering,
    port_partition,
    solve_linear,
    spectral_norm,
    waveguide_scattering,
)
from .optimize import (
    POSITION_FIXED,
    POSITION_OPTIMIZED,
    ProblemSpec,
    Solution,
    baseline_solve,
    dc_alternating_solve,
    dc_kappa_subproblem,
    dc_position_subproblem,
    fd_gradient,
    heuristic_fixed_positions,
    ideal_optimal_positions,
    ideal_optimal_scattering,
    ideal_solve,
    make_kappa_objective,
)
from .pamodels import (
    DCParams,
    FullIdealPA,
    KAPPA_MAX,
    MatchedIdealPA,
    acpc_phase_span,
    coupling_from_mode_impedances,
    dc_amp_phase,
    dc_coefficients,
    dc_three_port,
    equal_power_coupling,
)
from .system import (
    GainResult,
    SystemLayout,
    channel_gain,
    dc_chain_gain,
    e2e_multi_general,
    e2e_multi_matched,
    e2e_single_general,
)

__version__ = "0.1.0"
