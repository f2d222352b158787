"""Closed-form amplitudes and spectra against independent oracles."""

import cmath
import math

import numpy as np
import pytest
from scipy.integrate import quad

from welldecay import closedform
from welldecay.model import (
    BarrierDrive,
    LevelDrive,
    Lorentzian,
    ModelError,
    SystemParams,
)
from welldecay.solvers import SolverConfig, solve_volterra

TWO_PI = 2.0 * math.pi


# --------------------------------------------------------------------------
# wide-band amplitudes


def test_markovian_static_values():
    p = SystemParams(e0=0.0)
    assert closedform.b0_markovian_static(p, 0.0) == 1.0
    assert abs(closedform.b0_markovian_static(p, 1.0) - math.exp(-0.5)) < 1e-15
    p1 = SystemParams(e0=1.0)
    expected = cmath.exp(2.0j) * math.exp(-1.0)
    assert abs(closedform.b0_markovian_static(p1, -2.0) - expected) < 1e-15


def test_markovian_driven_level_is_undriven_survival():
    p = SystemParams(e0=0.0, level_drive=LevelDrive(u=3.0, omega=2.0))
    t = np.linspace(-5.0, 5.0, 401)
    p0 = np.abs(closedform.b0_markovian_driven(p, t)) ** 2
    assert np.max(np.abs(p0 - np.exp(-np.abs(t)))) < 1e-14


def test_markovian_driven_initial_condition():
    for p in (
        SystemParams(e0=2.0, level_drive=LevelDrive(1.0, 3.0)),
        SystemParams(e0=0.0, barrier_drive=BarrierDrive(0.3, 1.0)),
    ):
        assert closedform.b0_markovian_driven(p, 0.0) == 1.0


def test_markovian_driven_barrier_phase_against_quadrature():
    p = SystemParams(e0=0.0, barrier_drive=BarrierDrive(alpha=0.1, omega=2.0))
    w = lambda s: 1.0 + 0.1 * math.sin(2.0 * s)
    for t in (1.0, 3.7, -2.2):
        w2 = quad(lambda s: w(s) ** 2, 0.0, t)[0]
        expected = cmath.exp(-0.5 * math.copysign(1.0, t) * w2)
        got = closedform.b0_markovian_driven(p, t)
        assert abs(got - expected) < 1e-12


def test_markovian_driven_barrier_matches_sharp_lorentzian_volterra():
    # wide-band closed form vs the memory solver pushed toward the
    # wide-band limit (lam = 1e3 Gamma)
    p = SystemParams(e0=0.0, barrier_drive=BarrierDrive(alpha=0.1, omega=2.0))
    cfg = SolverConfig(dt=5.0e-5, t_end=1.0, tolerance=1e-2)
    traj = solve_volterra(p, Lorentzian(lam=1.0e3), None, cfg)
    ref = closedform.b0_markovian_driven(p, traj.times)
    assert np.max(np.abs(traj.b0 - ref)) < 1e-3


def test_markovian_driven_rejects_double_drive():
    p = SystemParams(
        e0=0.0, level_drive=LevelDrive(1.0, 1.0), barrier_drive=BarrierDrive(0.1, 1.0)
    )
    with pytest.raises(ModelError):
        closedform.b0_markovian_driven(p, 1.0)


def test_linear_alpha_variant_matches_full_to_first_order():
    om = 2.0
    t = np.linspace(0.0, 6.0, 301)
    gaps = []
    for alpha in (0.08, 0.04, 0.02):
        p = SystemParams(e0=0.0, barrier_drive=BarrierDrive(alpha, om))
        full = closedform.b0_markovian_driven(p, t)
        lin = closedform.b0_markovian_driven(p, t, linear_alpha=True)
        gaps.append(np.max(np.abs(full - lin)))
    # the variants differ at O(alpha^2): halving alpha quarters the gap
    assert gaps[1] < 0.30 * gaps[0]
    assert gaps[2] < 0.30 * gaps[1]


# --------------------------------------------------------------------------
# Lorentzian reservoir closed form


def test_lorentzian_q_branch_and_value():
    p = SystemParams(e0=0.0)
    q = closedform.lorentzian_q(p, 4.0, 1.0)
    assert abs(q - 2.0 * math.sqrt(2.0)) < 1e-14  # sqrt(16 - 8), real
    p1 = SystemParams(e0=1.0)
    for sign in (1.0, -1.0):
        q = closedform.lorentzian_q(p1, 4.0, sign)
        assert q.real >= 0.0
        assert abs(q * q - (16.0 - 8.0 - 1.0 - 2.0j * sign * 4.0)) < 1e-12


def test_lorentzian_static_initial_condition():
    p = SystemParams(e0=1.0)
    assert closedform.b0_lorentzian_static(p, 4.0, 0.0) == 1.0


def test_lorentzian_static_against_memory_solver():
    # oracle: independent fine-step integration of the memory equation
    p = SystemParams(e0=1.0)
    cfg = SolverConfig(dt=5.0e-4, t_end=2.0)
    traj = solve_volterra(p, Lorentzian(4.0), None, cfg)
    ref = closedform.b0_lorentzian_static(p, 4.0, traj.times)
    assert np.max(np.abs(traj.b0 - ref)) < 5e-7
    # spot value at Gamma t = 2 frozen from that oracle
    assert abs(abs(closedform.b0_lorentzian_static(p, 4.0, 2.0)) ** 2 - 0.1618992) < 1e-6


def test_lorentzian_static_far_time_does_not_overflow():
    p = SystemParams(e0=1.0)
    val = closedform.b0_lorentzian_static(p, 1000.0, 5.0)
    assert np.isfinite(val.real) and np.isfinite(val.imag)
    assert abs(val) <= 1.0


def test_lorentzian_degenerate_q_is_removable():
    # lam^2 - 2 lam Gamma = 0 at E0 = 0 makes Q = 0 exactly
    p = SystemParams(e0=0.0, gamma=1.0)
    lam = 2.0
    t = np.linspace(-3.0, 3.0, 61)
    vals = closedform.b0_lorentzian_static(p, lam, t)
    # oracle: same expression evaluated at a nearby non-degenerate width
    ref = closedform.b0_lorentzian_static(p, lam * (1.0 + 1e-9), t)
    assert np.max(np.abs(vals - ref)) < 1e-7
    assert np.all(np.isfinite(vals))


def test_lorentzian_to_markovian_limit():
    p = SystemParams(e0=0.0)
    t = np.concatenate([np.linspace(-5.0, -0.1, 120), np.linspace(0.1, 5.0, 120)])
    p0 = np.abs(closedform.b0_lorentzian_static(p, 1.0e3, t)) ** 2
    ref = np.exp(-np.abs(t))
    assert np.max(np.abs(p0 - ref) / ref) < 1e-2


def test_short_time_coefficients_values():
    assert closedform.short_time_coefficients(SystemParams(e0=0.0), 4.0) == (2.0, 8.0 / 3.0)
    assert closedform.short_time_coefficients(SystemParams(e0=3.0), 1.0) == (0.5, 1.0 / 6.0)
    c2, c3 = closedform.short_time_coefficients(SystemParams(e0=0.0, gamma=1e-14), 4.0)
    assert c2 < 1e-12 and c3 < 1e-12  # no coupling, no decay


@pytest.mark.parametrize("e0", [0.0, 1.0, 3.0])
def test_time_reversal_of_closed_forms(e0):
    p = SystemParams(e0=e0)
    t = np.linspace(1e-3, 6.0, 97)
    for f in (
        lambda tt: closedform.b0_markovian_static(p, tt),
        lambda tt: closedform.b0_lorentzian_static(p, 4.0, tt),
    ):
        assert np.max(np.abs(f(-t) - np.conj(f(t)))) < 1e-14


def test_cusp_markovian_one_sided_slopes():
    p = SystemParams(e0=0.7)
    h = 1e-7
    p0 = lambda t: abs(closedform.b0_markovian_static(p, t)) ** 2
    right = (p0(h) - p0(0.0)) / h
    left = (p0(0.0) - p0(-h)) / h
    assert abs(right + 1.0) < 1e-6  # -Gamma
    assert abs(left - 1.0) < 1e-6  # +Gamma


def test_cusp_lorentzian_smooth_first_derivative_third_derivative_jump():
    p = SystemParams(e0=1.0)
    lam = 4.0
    p0 = lambda t: abs(closedform.b0_lorentzian_static(p, lam, t)) ** 2
    h = 1e-5
    right_slope = (p0(h) - p0(0.0)) / h
    left_slope = (p0(0.0) - p0(-h)) / h
    assert abs(right_slope) < 1e-3 and abs(left_slope) < 1e-3
    # one-sided third derivatives: +-6 c3, so the jump across zero is 2 Gamma lam^2
    h = 1e-2
    third = lambda s: (
        -2.5 * p0(0.0) + 9.0 * p0(s * h) - 12.0 * p0(2 * s * h) + 7.0 * p0(3 * s * h) - 1.5 * p0(4 * s * h)
    ) / (s * h) ** 3
    jump = third(1.0) - third(-1.0)
    assert abs(jump - 2.0 * lam * lam) / (2.0 * lam * lam) < 2e-2


# --------------------------------------------------------------------------
# line shapes and driven spectra


def test_lineshape_markovian_zero_at_t0():
    p = SystemParams(e0=1.0)
    e = np.linspace(-8.0, 8.0, 101)
    assert np.max(np.abs(closedform.lineshape_markovian(p, e, 0.0))) < 1e-15


def test_lineshape_markovian_long_time_peak():
    p = SystemParams(e0=0.5)
    val = closedform.lineshape_markovian(p, 0.5, math.inf)
    assert abs(val - 2.0 / math.pi) < 1e-14  # (Gamma/2pi)/(Gamma^2/4)


def test_lineshape_markovian_long_time_normalization():
    p = SystemParams(e0=0.0)
    total = quad(lambda e: closedform.lineshape_markovian(p, e, math.inf), -np.inf, np.inf)[0]
    assert abs(total - 1.0) < 1e-9


def floquet_trajectory_oracle(params, e, t_max=80.0, dt=5e-4, linear_alpha=False):
    """Oracle: direct quadrature of P_r(t->inf) from the wide-band amplitude."""
    t = np.arange(0.0, t_max + dt / 2, dt)
    b0 = closedform.b0_markovian_driven(params, t, linear_alpha=linear_alpha)
    if params.barrier_drive is not None:
        w = 1.0 + params.barrier_drive.alpha * np.sin(params.barrier_drive.omega * t)
    else:
        w = np.ones_like(t)
    integral = np.trapezoid(w * b0 * np.exp(1j * e * t), t)
    return params.gamma / TWO_PI * abs(integral) ** 2


def test_floquet_level_reduces_to_lorentzian_line():
    p = SystemParams(e0=0.4, level_drive=LevelDrive(u=0.0, omega=1.0))
    e = np.linspace(-6.0, 6.0, 301)
    line = closedform.lineshape_markovian(p, e, math.inf)
    assert np.max(np.abs(closedform.floquet_spectrum_level(p, e) - line)) < 1e-14


def test_floquet_barrier_reduces_to_lorentzian_line():
    p = SystemParams(e0=-0.3, barrier_drive=BarrierDrive(alpha=0.0, omega=1.0))
    e = np.linspace(-6.0, 6.0, 301)
    line = closedform.lineshape_markovian(p, e, math.inf)
    assert np.max(np.abs(closedform.floquet_spectrum_barrier(p, e) - line)) < 1e-14


@pytest.mark.parametrize("e", [0.0, 0.2, -0.2, 0.4, -0.4])
def test_floquet_level_matches_trajectory_oracle(e):
    p = SystemParams(e0=0.0, level_drive=LevelDrive(u=0.2, omega=0.2))
    ref = floquet_trajectory_oracle(p, e)
    got = closedform.floquet_spectrum_level(p, e)
    assert abs(got - ref) < 2e-5 * max(ref, 1e-3)


@pytest.mark.parametrize("e", [0.0, 0.2, -0.2, 2.0, -2.0])
def test_floquet_barrier_matches_trajectory_oracle(e):
    # pins the sign of the prefactor-generated second term
    p = SystemParams(e0=0.0, barrier_drive=BarrierDrive(alpha=0.2, omega=0.2))
    ref = floquet_trajectory_oracle(p, e, linear_alpha=True)
    got = closedform.floquet_spectrum_barrier(p, e)
    assert abs(got - ref) < 2e-5 * max(ref, 1e-3)


def test_floquet_level_normalization():
    p = SystemParams(e0=0.0, level_drive=LevelDrive(u=3.0, omega=2.0))
    total = quad(
        lambda e: float(closedform.floquet_spectrum_level(p, e)), -np.inf, np.inf, limit=800
    )[0]
    assert abs(total - 1.0) < 1e-3


def test_floquet_barrier_normalization_matches_its_parseval_value():
    # the resummation inherits the linear-alpha amplitude, so its exact norm
    # is Gamma int w^2 |b0_lin|^2 dt (= 1 + O(alpha^2 xi) , not 1 exactly)
    p = SystemParams(e0=0.0, barrier_drive=BarrierDrive(alpha=0.2, omega=0.2))
    t = np.arange(0.0, 80.0, 2.5e-4)
    b0 = closedform.b0_markovian_driven(p, t, linear_alpha=True)
    w2 = (1.0 + 0.2 * np.sin(0.2 * t)) ** 2
    parseval = float(np.trapezoid(w2 * np.abs(b0) ** 2, t))
    total = quad(
        lambda e: float(closedform.floquet_spectrum_barrier(p, e)), -np.inf, np.inf, limit=800
    )[0]
    assert abs(total - parseval) < 5e-4
    assert abs(parseval - 1.0019) < 5e-4  # the O(alpha^2) excess, frozen


def test_floquet_barrier_normalization_small_drive():
    # the norm again equals the Parseval value of the linear-alpha amplitude;
    # the exact dynamics would give 1, the resummed formula keeps a small
    # alpha^2-order excess (0.43% here)
    p = SystemParams(e0=0.0, barrier_drive=BarrierDrive(alpha=0.1, omega=2.0))
    t = np.arange(0.0, 60.0, 2.5e-4)
    b0 = closedform.b0_markovian_driven(p, t, linear_alpha=True)
    w2 = (1.0 + 0.1 * np.sin(2.0 * t)) ** 2
    parseval = float(np.trapezoid(w2 * np.abs(b0) ** 2, t))
    total = quad(
        lambda e: float(closedform.floquet_spectrum_barrier(p, e)), -np.inf, np.inf, limit=800
    )[0]
    assert abs(total - parseval) < 5e-4
    assert abs(total - 1.0043028) < 5e-5  # frozen measurement of the excess


def test_floquet_barrier_rejects_full_modulation():
    p = SystemParams(e0=0.0, barrier_drive=BarrierDrive(alpha=1.0, omega=1.0))
    with pytest.raises(ModelError):
        closedform.floquet_spectrum_barrier(p, 0.0)


def test_first_sideband_more_pronounced_for_barrier_drive():
    level = SystemParams(e0=0.0, level_drive=LevelDrive(u=0.2, omega=0.2))
    barrier = SystemParams(e0=0.0, barrier_drive=BarrierDrive(alpha=0.2, omega=0.2))
    lv = closedform.floquet_spectrum_level(level, 0.2)
    br = closedform.floquet_spectrum_barrier(barrier, 0.2)
    assert br > lv
