"""Physical model shared by every solver: system parameters, sinusoidal
drive profiles, reservoir spectral densities and their memory kernels.

Units: hbar = 1 and the wide-band level width Gamma is the energy unit
(time in 1/Gamma). A reservoir is characterized by its spectral density
S(E) = Omega^2(E) rho(E); the kernel entering the memory integral is its
Fourier transform

    K(tau) = int S(E) e^{-i E tau} dE,

real and even in tau for every (even) density implemented here:

    wide band     S(E) = Gamma/(2 pi)                        K = Gamma delta(tau)
    Lorentzian    S(E) = Gamma/(2 pi) L^2/(E^2 + L^2)        K = (Gamma L / 2) e^{-L |tau|}
    semicircle    S(E) = Gamma/(2 pi) sqrt(1 - E^2/W^2)      K = Gamma J_1(W tau)/(2 tau)

on support |E| <= W for the semicircle. The finite chain discretizes the
semicircle with N levels E_r = W cos(r pi/(N+1)) and couplings chosen so
that Omega^2(E_r) rho(E_r) reproduces the semicircle density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .bessel import bessel_j

TWO_PI = 2.0 * math.pi


class ModelError(ValueError):
    """Invalid physical parameter or unsupported reservoir variant."""


@dataclass(frozen=True)
class LevelDrive:
    """Oscillating well level, E0(t) = E0 - u sin(omega t)."""

    u: float
    omega: float

    def __post_init__(self):
        if not self.omega > 0.0:
            raise ModelError(f"level drive needs omega > 0, got {self.omega}")


@dataclass(frozen=True)
class BarrierDrive:
    """Oscillating barrier transparency, w(t) = 1 + alpha sin(omega t)."""

    alpha: float
    omega: float

    def __post_init__(self):
        if not self.omega > 0.0:
            raise ModelError(f"barrier drive needs omega > 0, got {self.omega}")
        if self.alpha < 0.0:
            raise ModelError(f"barrier drive needs alpha >= 0, got {self.alpha}")


@dataclass(frozen=True)
class SystemParams:
    """Static level position, width, and optional drives (all in Gamma units).

    Both drives may be present simultaneously; they are evaluated
    independently wherever that combination is supported.
    """

    e0: float
    gamma: float = 1.0
    level_drive: Optional[LevelDrive] = None
    barrier_drive: Optional[BarrierDrive] = None

    def __post_init__(self):
        if not self.gamma > 0.0:
            raise ModelError(f"gamma must be positive, got {self.gamma}")

    @property
    def u(self) -> float:
        return self.level_drive.u if self.level_drive is not None else 0.0

    @property
    def alpha(self) -> float:
        return self.barrier_drive.alpha if self.barrier_drive is not None else 0.0


@dataclass(frozen=True)
class DriveProfile:
    """Time profiles E0(t), w(t) and their derivatives, plus the running
    integrals int_0^t E0 dt' and int_0^t w^2 dt' in closed form when the
    profiles are sinusoids (None means: integrate numerically)."""

    e0_of_t: Callable
    e0_dot_of_t: Callable
    w_of_t: Callable
    w_dot_of_t: Callable
    e0_integral: Optional[Callable] = None
    w2_integral: Optional[Callable] = None
    static: bool = False

    @classmethod
    def from_params(cls, params: SystemParams) -> "DriveProfile":
        e0 = params.e0
        ld, bd = params.level_drive, params.barrier_drive

        if ld is not None:
            u, om = ld.u, ld.omega

            def e0_of_t(t):
                return e0 - u * np.sin(om * np.asarray(t, dtype=float))

            def e0_dot_of_t(t):
                return -u * om * np.cos(om * np.asarray(t, dtype=float))

            def e0_integral(t):
                t = np.asarray(t, dtype=float)
                return e0 * t + (u / om) * (np.cos(om * t) - 1.0)

        else:

            def e0_of_t(t):
                return np.full_like(np.asarray(t, dtype=float), e0)

            def e0_dot_of_t(t):
                return np.zeros_like(np.asarray(t, dtype=float))

            def e0_integral(t):
                return e0 * np.asarray(t, dtype=float)

        if bd is not None:
            al, omb = bd.alpha, bd.omega

            def w_of_t(t):
                return 1.0 + al * np.sin(omb * np.asarray(t, dtype=float))

            def w_dot_of_t(t):
                return al * omb * np.cos(omb * np.asarray(t, dtype=float))

            def w2_integral(t):
                # int_0^t (1 + al sin)^2 = t + 2 al (1 - cos)/omb
                #                          + al^2 (t/2 - sin(2 omb t)/(4 omb))
                t = np.asarray(t, dtype=float)
                return (
                    t
                    + 2.0 * al / omb * (1.0 - np.cos(omb * t))
                    + al * al * (0.5 * t - np.sin(2.0 * omb * t) / (4.0 * omb))
                )

        else:

            def w_of_t(t):
                return np.ones_like(np.asarray(t, dtype=float))

            def w_dot_of_t(t):
                return np.zeros_like(np.asarray(t, dtype=float))

            def w2_integral(t):
                return np.asarray(t, dtype=float)

        return cls(
            e0_of_t=e0_of_t,
            e0_dot_of_t=e0_dot_of_t,
            w_of_t=w_of_t,
            w_dot_of_t=w_dot_of_t,
            e0_integral=e0_integral,
            w2_integral=w2_integral,
            static=(ld is None and bd is None),
        )


# ---------------------------------------------------------------------------
# reservoir spectral densities


@dataclass(frozen=True)
class WideBand:
    """Energy-independent reservoir, S(E) = Gamma/(2 pi); delta-function kernel."""

    gamma: float = 1.0

    def density(self, e):
        e = np.asarray(e, dtype=float)
        return np.full_like(e, self.gamma / TWO_PI)

    def kernel(self, tau):
        raise ModelError("wide-band kernel is a delta function; use the wide-band solver")

    def kernel_cutoff(self, rel_tol: float) -> Optional[float]:
        raise ModelError("wide-band kernel is a delta function; use the wide-band solver")


@dataclass(frozen=True)
class Lorentzian:
    """Lorentzian density of half-width lam, S(E) = Gamma/(2 pi) lam^2/(E^2+lam^2)."""

    lam: float
    gamma: float = 1.0

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ModelError(f"Lorentzian half-width must be positive, got {self.lam}")

    def density(self, e):
        e = np.asarray(e, dtype=float)
        l2 = self.lam * self.lam
        return self.gamma / TWO_PI * l2 / (e * e + l2)

    def kernel(self, tau):
        tau = np.asarray(tau, dtype=float)
        return 0.5 * self.gamma * self.lam * np.exp(-self.lam * np.abs(tau))

    def kernel_cutoff(self, rel_tol: float) -> Optional[float]:
        # e^{-lam tau} < rel_tol beyond this point
        return -math.log(rel_tol) / self.lam


@dataclass(frozen=True)
class Semicircle:
    """Semicircle density on |E| <= W, S(E) = Gamma/(2 pi) sqrt(1 - E^2/W^2)."""

    w_band: float
    gamma: float = 1.0

    def __post_init__(self):
        if not self.w_band > 0.0:
            raise ModelError(f"semicircle band edge must be positive, got {self.w_band}")

    def density(self, e):
        e = np.asarray(e, dtype=float)
        inside = 1.0 - (e / self.w_band) ** 2
        return self.gamma / TWO_PI * np.sqrt(np.clip(inside, 0.0, None))

    def kernel(self, tau):
        # Gamma J_1(W tau)/(2 tau); removable singularity, limit Gamma W / 4
        tau = np.abs(np.asarray(tau, dtype=float))
        scalar = tau.ndim == 0
        tau = np.atleast_1d(tau)
        out = np.empty_like(tau)
        small = tau * self.w_band < 1.0e-8
        out[small] = self.gamma * self.w_band / 4.0
        big = ~small
        if np.any(big):
            vals = np.array([bessel_j(1, self.w_band * t) for t in tau[big]])
            out[big] = self.gamma * vals / (2.0 * tau[big])
        return out[0] if scalar else out

    def kernel_cutoff(self, rel_tol: float) -> Optional[float]:
        return None  # algebraic tail, keep the full history


@dataclass(frozen=True)
class FiniteChain:
    """N discrete reservoir levels sampling the semicircle band.

    Levels E_r = W cos(r pi/(N+1)), r = 1..N, strictly decreasing, and
    couplings Omega(E_r) = sqrt(Gamma W / (2 (N+1))) sqrt(1 - E_r^2/W^2),
    vanishing at the band edges. With the level density
    rho(E_r) = (N+1)/(pi sqrt(W^2 - E_r^2)) this makes Omega^2 rho equal
    to the semicircle density at every level.
    """

    n_levels: int
    w_band: float
    gamma: float = 1.0

    def __post_init__(self):
        if self.n_levels < 1:
            raise ModelError(f"chain needs at least one level, got {self.n_levels}")
        if not self.w_band > 0.0:
            raise ModelError(f"chain band edge must be positive, got {self.w_band}")

    def level_energies(self) -> np.ndarray:
        r = np.arange(1, self.n_levels + 1)
        return self.w_band * np.cos(r * np.pi / (self.n_levels + 1))

    def couplings(self) -> np.ndarray:
        e = self.level_energies()
        return np.sqrt(self.gamma * self.w_band / (2.0 * (self.n_levels + 1))) * np.sqrt(
            1.0 - (e / self.w_band) ** 2
        )

    def level_density(self) -> np.ndarray:
        e = self.level_energies()
        return (self.n_levels + 1) / (np.pi * np.sqrt(self.w_band**2 - e**2))

    def density(self, e):
        # continuum envelope (the N -> infinity limit of Omega^2 rho)
        e = np.asarray(e, dtype=float)
        inside = 1.0 - (e / self.w_band) ** 2
        return self.gamma / TWO_PI * np.sqrt(np.clip(inside, 0.0, None))

    def kernel(self, tau):
        raise ModelError("finite chain has no continuum kernel; evolve it exactly instead")

    def kernel_cutoff(self, rel_tol: float) -> Optional[float]:
        raise ModelError("finite chain has no continuum kernel; evolve it exactly instead")


SpectralDensity = Union[WideBand, Lorentzian, Semicircle, FiniteChain]


def spectral_density_at(sd: SpectralDensity, e) -> Union[float, np.ndarray]:
    """S(E) for any reservoir variant (the continuum envelope for FiniteChain)."""
    out = sd.density(e)
    return float(out) if np.ndim(e) == 0 else out


def memory_kernel(sd: SpectralDensity, tau) -> Union[float, np.ndarray]:
    """Memory kernel K(tau), defined for the Lorentzian and semicircle variants."""
    out = sd.kernel(tau)
    return float(out) if np.ndim(tau) == 0 else out
