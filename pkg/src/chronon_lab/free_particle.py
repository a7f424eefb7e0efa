"""Free-particle dispersion and discretized massless Klein-Gordon modes.

Momenta are carried in eV/c so the kinetic energy is (pc)^2 / (2 m0 c^2).
Below p_max = sqrt(2 m0 hbar / tau) the symmetric plane-wave frequency is
(1/tau) asin(tau p^2 / (2 m0 hbar)); above it the real part saturates at
pi/(2 tau) and an imaginary (decaying) part turns on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import HBAR_EV_S, SPEED_OF_LIGHT
from .errors import DomainError
from .linalg import arccos_branch


@dataclass(frozen=True)
class DispersionResult:
    """Mode frequency of a free particle at momentum p.

    alpha_re in rad/s, alpha_im <= 0 in 1/s; regime records which side of
    p_max the momentum sits on.
    """

    p: float              # eV/c
    alpha_re: float
    alpha_im: float
    regime: str           # "below_pmax" | "above_pmax"

    def __post_init__(self):
        if self.regime not in ("below_pmax", "above_pmax"):
            raise DomainError(f"unknown regime {self.regime!r}")


def kinetic_energy(p: float, m0_c2: float) -> float:
    """Non-relativistic kinetic energy (pc)^2 / (2 m0 c^2) in eV."""
    return p * p / (2.0 * m0_c2)


def momentum_cutoff(m0_c2: float, tau: float, hbar: float = HBAR_EV_S) -> float:
    """p_max = sqrt(2 m0 hbar / tau) in eV/c."""
    if m0_c2 <= 0.0 or tau <= 0.0:
        raise DomainError("m0_c2 and tau must be strictly positive")
    return math.sqrt(2.0 * m0_c2 * hbar / tau)


def group_velocity(p: float, m0_c2: float, tau: float, hbar: float = HBAR_EV_S,
                   c: float = SPEED_OF_LIGHT) -> float:
    """Packet velocity (p/m0) [1 - (tau E_p/hbar)^2]^(-1/2) in m/s.

    Diverges as p approaches p_max; infinite at and above the cutoff.
    """
    x = tau * kinetic_energy(p, m0_c2) / hbar
    if x >= 1.0:
        return math.inf
    return (p / m0_c2) * c / math.sqrt(1.0 - x * x)


def free_particle_dispersion(
    p: float, m0_c2: float, tau: float, hbar: float = HBAR_EV_S
) -> DispersionResult:
    """Symmetric-scheme mode frequency alpha(p)."""
    if p < 0.0:
        raise DomainError("momentum magnitude must be non-negative")
    x = tau * kinetic_energy(p, m0_c2) / hbar
    if x <= 1.0:
        return DispersionResult(
            p=p, alpha_re=math.asin(x) / tau, alpha_im=0.0, regime="below_pmax"
        )
    return DispersionResult(
        p=p,
        alpha_re=math.pi / (2.0 * tau),
        alpha_im=-math.log(x + math.sqrt(x * x - 1.0)) / tau,
        regime="above_pmax",
    )


def retarded_mode(
    p: float, x: float, t: float, tau: float, m0_c2: float, hbar: float = HBAR_EV_S,
    c: float = SPEED_OF_LIGHT,
) -> complex:
    """Retarded plane-wave value exp[i p x/hbar] with atan phase and log damping.

    |psi| = [1 + (tau E_p/hbar)^2]^(-t/(2 tau)); the first-order magnitude
    is exp(-omega^2 tau t / 2) at omega = E_p/hbar (decay, not growth).
    """
    w = tau * kinetic_energy(p, m0_c2) / hbar
    spatial = p * x / (hbar * c)  # p in eV/c: p*c*x/(hbar c) is dimensionless
    phase = spatial - (t / tau) * math.atan(w)
    log_mag = -(t / (2.0 * tau)) * math.log1p(w * w)
    return complex(math.exp(log_mag) * math.cos(phase), math.exp(log_mag) * math.sin(phase))


def retarded_mode_magnitude(omega: np.ndarray, t: float, tau: float) -> np.ndarray:
    """Spectral magnitude [1 + (omega tau)^2]^(-t/(2 tau)) at fixed t."""
    omega = np.asarray(omega, dtype=float)
    return np.exp(-(t / (2.0 * tau)) * np.log1p((omega * tau) ** 2))


def retarded_inflection_frequency(
    t: float,
    tau: float,
    omega_min: float | None = None,
    omega_max: float | None = None,
    n_grid: int = 2048,
) -> float:
    """Inflection frequency of the spectral magnitude at time t.

    The curve [1 + (omega tau)^2]^(-t/2 tau) is concave at low omega and
    convex past the knee; this locates the sign change of its central
    second difference on a fixed log-spaced grid (2048 points by default;
    the grid is a documented convention, not claimed canonical).  The
    returned frequency delimits the fast-decay region and moves to lower
    omega as t grows.
    """
    if t <= 0.0:
        raise DomainError("inflection tracking needs t > 0")
    if omega_min is None:
        omega_min = 1e-3 / tau
    if omega_max is None:
        omega_max = 1e3 / tau
    grid = np.geomspace(omega_min, omega_max, n_grid)
    mag = retarded_mode_magnitude(grid, t, tau)
    curvature = np.gradient(np.gradient(mag, grid), grid)
    crossings = np.nonzero((curvature[:-1] < 0.0) & (curvature[1:] >= 0.0))[0]
    if len(crossings) == 0:
        return float(grid[int(np.argmax(np.abs(curvature)))])
    i = int(crossings[0])
    # linear interpolation of the zero crossing between grid nodes
    c0, c1 = curvature[i], curvature[i + 1]
    frac = c0 / (c0 - c1) if c1 != c0 else 0.0
    return float(grid[i] + frac * (grid[i + 1] - grid[i]))


@dataclass(frozen=True)
class KleinGordonMode:
    """One discretized massless mode: amplitude and shifted energy."""

    amplitude: complex
    energy: float         # E = hbar c k (eV)
    energy_shifted: float  # hbar times the real phase rate (eV)
    decay_rate: float      # 1/s, zero below the critical limit


def klein_gordon_mode(
    k: float, tau: float, x: float, t: float,
    hbar: float = HBAR_EV_S, c: float = SPEED_OF_LIGHT,
) -> KleinGordonMode:
    """Mode exp[-i (t / 2 tau) acos(1 - 2 c^2 tau^2 k^2)] exp(i k x).

    Below E = hbar c k <= hbar/tau the acos argument stays in [-1, 1] and
    the phase rate gives E' ~ E (1 + E^2 tau^2 / 6 hbar^2); above the limit
    the continued acos branch yields exponentially decaying modes.
    """
    if k < 0.0:
        raise DomainError("wavenumber magnitude must be non-negative")
    energy = hbar * c * k
    y = 1.0 - 2.0 * (c * tau * k) ** 2
    angle = arccos_branch(y)  # complex scalar, pi - i log(...) below y = -1
    phase_rate = angle / (2.0 * tau)
    amplitude = np.exp(-1j * (t / (2.0 * tau)) * angle) * np.exp(1j * k * x)
    return KleinGordonMode(
        amplitude=complex(amplitude),
        energy=energy,
        energy_shifted=float(np.real(phase_rate)) * hbar,
        decay_rate=float(-np.imag(phase_rate)),
    )
