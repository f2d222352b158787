"""Quantum decay of a localized level into a continuum: time-domain solvers
for static and periodically driven Hamiltonians, exact finite reservoirs,
closed-form oracles, and photon-sideband spectra."""

from .bessel import bessel_i, bessel_j, truncation_order
from .chain import (
    ChainModel,
    ChainState,
    ChainTrajectory,
    evolve_chain,
    lineshape_exact,
    revival_time,
)
from .closedform import (
    b0_lorentzian_static,
    b0_markovian_driven,
    b0_markovian_static,
    floquet_spectrum_barrier,
    floquet_spectrum_level,
    lineshape_markovian,
    short_time_coefficients,
    wideband_phase,
)
from .model import (
    BarrierDrive,
    DriveProfile,
    FiniteChain,
    LevelDrive,
    Lorentzian,
    ModelError,
    Semicircle,
    SpectralDensity,
    SystemParams,
    WideBand,
    memory_kernel,
    spectral_density_at,
)
from .solvers import (
    LORENTZIAN_ODE,
    VOLTERRA_PC,
    WIDEBAND_CLOSED,
    AmplitudeTrajectory,
    MismatchError,
    ResolutionError,
    SolverConfig,
    SolverError,
    combine_signed,
    convergence_order,
    default_dt,
    solve_lorentzian_ode,
    solve_volterra,
    solve_wideband,
)
from .spectra import (
    EnergySpectrum,
    conservation_window,
    energy_grid,
    sideband_count,
    spectrum_asymptotic,
    spectrum_from_trajectory,
)

__version__ = "0.1.0"
