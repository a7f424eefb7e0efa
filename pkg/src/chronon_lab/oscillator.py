"""Harmonic oscillator under discrete time, in both pictures.

The level spectrum E_n = (n + 1/2) hbar omega is untouched by the time
discretization; only the time dependence changes.  The symmetric scheme
rotates each level at (1/tau) asin(E_n tau / hbar) and caps the admissible
levels at the critical limit; the retarded scheme damps every level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import HBAR_EV_S
from .errors import DomainError, StabilityError
from .evolution import Scheme, scheme_eigenvalue_factor
from .linalg import arcsin_branch


@dataclass(frozen=True)
class OscillatorParams:
    """Oscillator frequency and chronon, plus the retarded ladder factor xi.

    ``xi`` is only constrained to be real and non-negative; it controls the
    extra damping of the retarded ladder operators and defaults to zero.
    """

    omega: float          # rad/s
    m: float              # mass, any consistent unit
    tau: float            # s
    xi: float = 0.0
    hbar: float = HBAR_EV_S

    def __post_init__(self):
        if self.omega <= 0.0 or self.m <= 0.0 or self.tau <= 0.0:
            raise DomainError("omega, m and tau must be strictly positive")
        if self.xi < 0.0:
            raise DomainError("xi must be non-negative")

    def level_energy(self, n: int) -> float:
        return (n + 0.5) * self.hbar * self.omega


@dataclass(frozen=True)
class OscillatorState:
    """Level amplitudes c_n at time t, plus their per-level norms."""

    amplitudes: np.ndarray
    t: float

    @property
    def level_norms(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def norm_sq(self) -> float:
        return float(np.sum(self.level_norms))


def oscillator_evolution(
    params: OscillatorParams,
    c0: np.ndarray,
    scheme: Scheme,
    t: float,
) -> OscillatorState:
    """Evolve level amplitudes to time t (a lattice multiple of tau).

    Symmetric evolution requires every populated level below the critical
    limit (n_max + 1/2) hbar omega <= hbar / tau and is then a pure phase
    per level.  Retarded evolution multiplies each level by
    [1 + i tau E_n / hbar]^(-t/tau), whose modulus decays.
    """
    scheme = Scheme(scheme)
    c0 = np.asarray(c0, dtype=complex)
    levels = np.arange(len(c0))
    energies = (levels + 0.5) * params.hbar * params.omega
    x = energies * params.tau / params.hbar
    if scheme is Scheme.SYMMETRIC:
        populated = np.abs(c0) > 0.0
        over = populated & (np.abs(x) > 1.0)
        if np.any(over):
            bad = int(levels[over][0])
            raise StabilityError(
                f"oscillator level n={bad} exceeds the critical limit: "
                f"|tau E/hbar| = {abs(x[bad]):.6g} > 1"
            )
    k = t / params.tau
    if abs(k - round(k)) > 1e-9 * max(1.0, abs(k)):
        raise DomainError("t must be a lattice multiple of tau")
    factors = scheme_eigenvalue_factor(energies, scheme, round(k), params.tau, params.hbar)
    return OscillatorState(amplitudes=factors * c0, t=t)


def expectation_value(state: OscillatorState, a_matrix: np.ndarray) -> complex:
    """<A>(t) for an operator given as a matrix over the level basis."""
    c = state.amplitudes
    return complex(np.vdot(c, np.asarray(a_matrix, dtype=complex) @ c))


def symmetric_beat_frequency(params: OscillatorParams, n: int, m: int) -> float:
    """Two-level beat (1/tau)[asin(tau E_n/hbar) - asin(tau E_m/hbar)] (rad/s)."""
    xn = params.level_energy(n) * params.tau / params.hbar
    xm = params.level_energy(m) * params.tau / params.hbar
    if max(abs(xn), abs(xm)) > 1.0:
        raise StabilityError("both levels must sit below the critical limit")
    return (math.asin(xn) - math.asin(xm)) / params.tau


@dataclass(frozen=True)
class HeisenbergSolution:
    """Closed-form time evolution of x, p, N and H for one scheme.

    x(t) = x_cos * x(0) + x_sin * p(0)/(m omega)
    p(t) = x_cos * p(0) - x_sin * m omega x(0)
    ``number_factor`` multiplies N(0) (and the A†A part of H); it is 1 for
    the stable symmetric branch and decays for the retarded scheme.
    """

    x_cos: complex
    x_sin: complex
    number_factor: float
    discrete_frequency: complex
    stable: bool


def oscillator_heisenberg(
    params: OscillatorParams, scheme: Scheme, t: float
) -> HeisenbergSolution:
    """Position/momentum rotation factors at time t.

    symmetric: rotation at (1/tau) asin(omega tau); above omega tau = 1 the
    frequency turns complex and the solution is flagged unstable.
    retarded: ladder factors [1 +- i omega tau + xi (omega tau)^2]^(-t/tau),
    which damp N and H at exp[-2 (xi + 1/2) omega^2 tau t] to first order.
    """
    scheme = Scheme(scheme)
    w = params.omega * params.tau
    k = t / params.tau
    if scheme is Scheme.SYMMETRIC:
        freq = arcsin_branch(w) / params.tau
        stable = w <= 1.0
        phase = np.exp(-1j * k * arcsin_branch(w))
        # cos/sin of the (possibly complex) rotation angle k*asin(w)
        angle = k * arcsin_branch(w)
        return HeisenbergSolution(
            x_cos=complex(np.cos(angle)),
            x_sin=complex(np.sin(angle)),
            number_factor=1.0 if stable else float(abs(phase) ** 2),
            discrete_frequency=complex(freq),
            stable=stable,
        )
    if scheme is Scheme.RETARDED:
        base = 1.0 + 1j * w + params.xi * w * w
        ladder = base ** (-k)                       # multiplies A(0)
        ladder_dag = np.conj(base) ** (-k)          # multiplies A†(0)
        number_factor = float((abs(base) ** 2) ** (-k))
        # x(t) = (A(t) + A†(t)) scale: cos/sin split of the mean ladder phase
        x_cos = (ladder + ladder_dag) / 2.0
        x_sin = (ladder - ladder_dag) / 2j
        freq = np.angle(base) / params.tau - 1j * math.log(abs(base)) / params.tau
        return HeisenbergSolution(
            x_cos=complex(x_cos),
            x_sin=complex(x_sin),
            number_factor=number_factor,
            discrete_frequency=complex(freq),
            stable=True,
        )
    raise DomainError("oscillator_heisenberg supports the symmetric and retarded schemes")


def retarded_number_decay_rate(params: OscillatorParams) -> float:
    """First-order decay rate 2 (xi + 1/2) omega^2 tau of N and H (1/s)."""
    return 2.0 * (params.xi + 0.5) * params.omega**2 * params.tau


def retarded_mean_position_decay_rate(params: OscillatorParams) -> float:
    """First-order decay rate (xi + 1/2) omega^2 tau of <x(t)> (1/s)."""
    return (params.xi + 0.5) * params.omega**2 * params.tau
