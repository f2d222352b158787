"""Exact finite-reservoir evolution: limits, revival, unitarity, lineshape."""

import math

import numpy as np
import pytest

from welldecay import closedform
from welldecay.chain import (
    ChainModel,
    ChainTrajectory,
    evolve_chain,
    lineshape_exact,
    revival_time,
)
from welldecay.model import DriveProfile, LevelDrive, ModelError, Semicircle, SystemParams
from welldecay.solvers import ResolutionError, SolverConfig, SolverError, solve_volterra


def test_decoupled_chain_is_free_evolution():
    model = ChainModel(n_levels=40, w_band=6.0, e0=1.3, gamma=0.0)
    traj = evolve_chain(model, None, 3.0, 5e-3)
    ref = np.exp(-1j * model.e0 * traj.times)
    assert np.max(np.abs(traj.b0 - ref)) < 1e-12
    assert np.max(np.abs(traj.br)) < 1e-14


def test_two_level_rabi_oscillation():
    # N = 1: the single reservoir level sits at E = 0 and the coupling is
    # Omega = sqrt(Gamma W) / 2; for e0 = 0 this is a textbook Rabi problem
    w_band = 4.0
    model = ChainModel(n_levels=1, w_band=w_band, e0=0.0, gamma=1.0)
    omega_r = float(model.reservoir.couplings()[0])
    assert abs(omega_r - math.sqrt(w_band) / 2.0) < 1e-14
    traj = evolve_chain(model, None, 3.0 * math.pi / omega_r, 1e-3)
    ref = np.cos(omega_r * traj.times) ** 2
    assert np.max(np.abs(traj.p0 - ref)) < 1e-10
    # a full period returns the particle to the well
    period = math.pi / omega_r
    assert abs(traj.p0[traj.times.searchsorted(period)] - 1.0) < 1e-6


def test_chain_tracks_exponential_in_decay_regime_then_revives():
    model = ChainModel(250, 6.0, 1.0)
    traj = evolve_chain(model, None, 100.0, 7e-3, store_reservoir=False)
    window = (traj.times >= 1.0) & (traj.times <= 10.0)
    dev = np.max(np.abs(traj.p0[window] - np.exp(-traj.times[window])))
    assert dev < 0.05
    assert revival_time(traj) is not None


def test_revival_time_grows_with_reservoir_size():
    revs = {}
    for n in (150, 250):
        traj = evolve_chain(ChainModel(n, 6.0, 1.0), None, 110.0, 7e-3, store_reservoir=False)
        revs[n] = revival_time(traj)
    assert revs[150] is not None and revs[250] is not None
    assert revs[250] > revs[150]
    # the leading edge of the reflected wave travels at the band-edge group
    # velocity: t_rev is a little beyond 2(N+1)/W
    assert revs[150] > 2.0 * 151 / 6.0
    assert revs[250] > 2.0 * 251 / 6.0


def test_revival_none_for_synthetic_pure_decay():
    times = np.linspace(0.0, 12.0, 1201)
    traj = ChainTrajectory(
        times=times,
        b0=np.exp(-0.5 * times).astype(complex),
        br=None,
        model=ChainModel(10, 6.0, 0.0),
        method="synthetic",
        norm_drift=0.0,
    )
    assert revival_time(traj) is None


def test_revival_series_too_short():
    times = np.linspace(0.0, 1.0, 101)
    traj = ChainTrajectory(
        times=times,
        b0=np.exp(-0.5 * times).astype(complex),
        br=None,
        model=ChainModel(10, 6.0, 0.0),
        method="synthetic",
        norm_drift=0.0,
    )
    with pytest.raises(SolverError):
        revival_time(traj)


def test_unitarity_static_and_driven():
    model = ChainModel(120, 6.0, 1.0)
    static = evolve_chain(model, None, 10.0, 5e-3)
    assert static.norm_drift < 1e-8 * 10.0
    drive = DriveProfile.from_params(
        SystemParams(e0=1.0, level_drive=LevelDrive(u=2.0, omega=2.0))
    )
    driven = evolve_chain(model, drive, 10.0, 5e-3)
    assert driven.method == "strang-splitting"
    assert driven.norm_drift < 1e-8 * 10.0


def test_continuum_limit_against_semicircle_solution():
    # finite-N deviations from the continuum memory solution shrink with N,
    # and are already below discretization noise on the pre-revival window
    p = SystemParams(e0=1.0)
    cont = solve_volterra(p, Semicircle(6.0), None, SolverConfig(dt=5e-3, t_end=5.0))
    devs = {}
    exp_devs = {}
    for n in (50, 150, 250):
        traj = evolve_chain(ChainModel(n, 6.0, 1.0), None, 5.0, 5e-3, store_reservoir=False)
        devs[n] = float(np.max(np.abs(traj.p0 - cont.p0)))
        exp_devs[n] = float(np.max(np.abs(traj.p0 - np.exp(-traj.times))))
    assert devs[50] < 0.02 and devs[150] < 0.02 and devs[250] < 0.02
    # measured deviation from pure exponential decay is transient-dominated
    # (quadratic onset of the finite band) and identical across N here
    assert exp_devs[150] <= exp_devs[50] + 1e-6
    assert exp_devs[250] <= exp_devs[150] + 1e-6


def test_negative_time_chain_is_conjugate():
    model = ChainModel(80, 6.0, 1.0)
    fwd = evolve_chain(model, None, 4.0, 5e-3)
    bwd = evolve_chain(model, None, -4.0, 5e-3)
    assert np.max(np.abs(bwd.b0 - np.conj(fwd.b0))) < 1e-12


def test_lineshape_zero_at_t0_and_unitarity_complement():
    model = ChainModel(250, 6.0, 1.0)
    traj = evolve_chain(model, None, 8.0, 5e-3)
    spec0 = lineshape_exact(traj, 0.0)
    assert np.max(spec0.values) < 1e-25  # zeros up to eigenbasis roundoff
    state = traj.state_at(8.0)
    assert abs(state.norm - 1.0) < 1e-12
    reservoir_weight = float(np.sum(np.abs(state.br) ** 2))
    assert abs(reservoir_weight - (1.0 - traj.p0[traj.index_of(8.0)])) < 1e-12


def test_lineshape_matches_markovian_line_at_late_time():
    model = ChainModel(250, 6.0, 1.0)
    traj = evolve_chain(model, None, 8.0, 5e-3)
    spec = lineshape_exact(traj)  # defaults to the final time
    p = SystemParams(e0=1.0)
    ref_peak = closedform.lineshape_markovian(p, 1.0, 8.0)
    i_peak = int(np.argmin(np.abs(spec.energies - 1.0)))
    assert abs(spec.values[i_peak] - ref_peak) / ref_peak < 0.05
    # half width at half maximum close to Gamma / 2
    half = 0.5 * spec.values[i_peak]
    above = spec.energies[spec.values >= half]
    hwhm = 0.5 * (above.max() - above.min())
    assert abs(hwhm - 0.5) < 0.15


def test_driven_chain_matches_wideband_spectrum():
    # level-driven chain vs the wide-band sideband picture: an end-to-end
    # validation of the splitting stepper against independent analytics
    u, om = 3.0, 2.0
    model = ChainModel(600, 16.0, 0.0)
    drive = DriveProfile.from_params(SystemParams(e0=0.0, level_drive=LevelDrive(u, om)))
    traj = evolve_chain(model, drive, 14.0, 2e-3)
    spec = lineshape_exact(traj)
    params = SystemParams(e0=0.0, level_drive=LevelDrive(u, om))
    # finite-time trajectory oracle at the two first sidebands
    t = np.arange(0.0, 14.0 + 1e-9, 2e-3)
    b0 = closedform.b0_markovian_driven(params, t)
    for e_test in (2.0, -2.0):
        i = int(np.argmin(np.abs(spec.energies - e_test)))
        ref = params.gamma / (2 * math.pi) * abs(
            np.trapezoid(b0 * np.exp(1j * spec.energies[i] * t), t)
        ) ** 2
        assert abs(spec.values[i] - ref) / ref < 0.06
    # the asymmetry between emission and absorption sidebands is physical
    i_plus = int(np.argmin(np.abs(spec.energies - om)))
    i_minus = int(np.argmin(np.abs(spec.energies + om)))
    assert spec.values[i_minus] > 2.0 * spec.values[i_plus]


def test_resolution_guard():
    with pytest.raises(ResolutionError):
        evolve_chain(ChainModel(50, 6.0, 1.0), None, 5.0, 0.05)


def test_state_access_requires_stored_reservoir():
    traj = evolve_chain(ChainModel(30, 6.0, 1.0), None, 2.0, 5e-3, store_reservoir=False)
    with pytest.raises(ModelError):
        traj.state_at(1.0)
