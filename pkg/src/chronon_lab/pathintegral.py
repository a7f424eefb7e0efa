"""One-step propagator kernel on a spatial grid.

A single chronon of evolution convolves the wave function with
(1/A) exp[i m (x - x')^2 / (2 hbar tau) - i (tau/hbar) V((x + x')/2, t)],
A = sqrt(2 i pi hbar tau / m), with the potential sampled at the midpoint.
To first order in tau this reproduces the advanced finite-difference step
1 - i tau H / hbar on the same grid, which is also provided here (with a
spectral Laplacian) for cross-checks.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .constants import HBAR_EV_S
from .errors import DomainError, ResolutionError

KERNEL_MIN_POINTS = 4.0


@dataclass(frozen=True)
class GridState:
    """Wave-function samples on a uniform grid.

    ``potential`` maps (x array, t) to V values; ``boundary`` is either
    "periodic" (displacements wrap around the box) or "absorbing" (plain
    truncation of the convolution integral: amplitude leaving the window
    is dropped).
    """

    x: np.ndarray
    psi: np.ndarray
    mass: float
    potential: Callable[[np.ndarray, float], np.ndarray]
    t: float = 0.0
    boundary: str = "periodic"
    hbar: float = HBAR_EV_S

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        psi = np.asarray(self.psi, dtype=complex)
        if x.ndim != 1 or x.shape != psi.shape:
            raise DomainError("grid and wave function must be matching 1-d arrays")
        spacings = np.diff(x)
        if len(spacings) == 0 or not np.allclose(spacings, spacings[0], rtol=1e-9):
            raise DomainError("grid must be uniform")
        if self.boundary not in ("periodic", "absorbing"):
            raise DomainError(f"unknown boundary {self.boundary!r}")
        if self.mass <= 0.0:
            raise DomainError("mass must be strictly positive")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "psi", psi)

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def length(self) -> float:
        return float(self.x[-1] - self.x[0]) + self.dx

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.psi) ** 2) * self.dx)


def free_potential(x: np.ndarray, t: float) -> np.ndarray:
    return np.zeros_like(np.asarray(x, dtype=float))


def path_integral_step(state: GridState, tau: float, chunk: int = 256) -> GridState:
    """Propagate one chronon with the midpoint-potential kernel.

    The stationary-phase width sqrt(hbar tau / m) must span at least four
    grid points or the kernel is undersampled and a resolution error is
    raised.  Rows of the kernel are generated in chunks so the full matrix
    is never materialised.
    """
    if tau <= 0.0:
        raise DomainError("tau must be strictly positive")
    hbar = state.hbar
    width = np.sqrt(hbar * tau / state.mass)
    if width < KERNEL_MIN_POINTS * state.dx:
        raise ResolutionError(
            f"kernel width {width:.3e} spans fewer than {KERNEL_MIN_POINTS:g} grid points "
            f"(dx = {state.dx:.3e}); refine the grid or enlarge tau"
        )
    norm = 1.0 / cmath.sqrt(2j * np.pi * hbar * tau / state.mass)
    x = state.x
    length = state.length
    psi_new = np.empty_like(state.psi)
    phase_scale = state.mass / (2.0 * hbar * tau)
    for start in range(0, len(x), chunk):
        rows = x[start : start + chunk, None]
        disp = rows - x[None, :]
        if state.boundary == "periodic":
            disp = disp - length * np.round(disp / length)
        midpoint = rows - 0.5 * disp
        v_mid = state.potential(midpoint, state.t)
        kernel = np.exp(1j * phase_scale * disp**2 - 1j * (tau / hbar) * v_mid)
        psi_new[start : start + chunk] = kernel @ state.psi
    psi_new *= norm * state.dx
    return replace(state, psi=psi_new, t=state.t + tau)


def apply_grid_hamiltonian(state: GridState) -> np.ndarray:
    """H psi with a spectral (FFT) Laplacian on the periodic grid."""
    n = len(state.x)
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=state.dx)
    kinetic = np.fft.ifft((state.hbar**2 * k**2 / (2.0 * state.mass)) * np.fft.fft(state.psi))
    return kinetic + state.potential(state.x, state.t) * state.psi


def advanced_grid_step(state: GridState, tau: float) -> GridState:
    """Advanced finite-difference step psi - (i tau / hbar) H psi."""
    if tau <= 0.0:
        raise DomainError("tau must be strictly positive")
    psi_new = state.psi - 1j * tau / state.hbar * apply_grid_hamiltonian(state)
    return replace(state, psi=psi_new, t=state.t + tau)


def gaussian_packet(
    x: np.ndarray, sigma: float, center: float = 0.0, k0: float = 0.0
) -> np.ndarray:
    """Normalised Gaussian (2 pi sigma^2)^(-1/4) exp(-(x-c)^2/4 sigma^2 + i k0 (x-c))."""
    x = np.asarray(x, dtype=float)
    envelope = (2.0 * np.pi * sigma**2) ** (-0.25) * np.exp(-((x - center) ** 2) / (4.0 * sigma**2))
    return envelope * np.exp(1j * k0 * (x - center))


def free_gaussian_evolution(
    x: np.ndarray, t: float, sigma: float, mass: float, hbar: float = HBAR_EV_S,
    center: float = 0.0, k0: float = 0.0,
) -> np.ndarray:
    """Closed-form free spreading of :func:`gaussian_packet` (oracle-grade).

    With s = 1 + i hbar t / (2 m sigma^2) and v = hbar k0 / m:

    psi = (2 pi sigma^2)^(-1/4) s^(-1/2)
          exp[-(x - c - v t)^2 / (4 sigma^2 s) + i k0 (x - c) - i hbar k0^2 t / 2m].

    Evaluated from the exact Gaussian integral of the free kernel, so it
    serves as an independent reference for the kernel convolution.
    """
    x = np.asarray(x, dtype=float)
    s = 1.0 + 1j * hbar * t / (2.0 * mass * sigma**2)
    xi = x - center
    phase_free = 1j * (k0 * xi - hbar * k0**2 * t / (2.0 * mass))
    spread = -((xi - hbar * k0 * t / mass) ** 2) / (4.0 * sigma**2 * s)
    return (2.0 * np.pi * sigma**2) ** (-0.25) / np.sqrt(s) * np.exp(spread + phase_free)
