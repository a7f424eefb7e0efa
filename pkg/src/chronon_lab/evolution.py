"""Finite-difference Schrodinger dynamics in three schemes.

The retarded, symmetric and advanced difference laws replace the time
derivative with differences over (t, t-tau), (t-tau, t+tau) and (t, t+tau)
respectively.  All evolution here is spectral: states are projected onto
the eigenbasis of the Hamiltonian and stepped per eigenvalue, so the
closed-form evolution operators are exact up to eigendecomposition error.
A dense recursion oracle lives in the test suite, not here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .constants import HBAR_EV_S
from .errors import DomainError, PreconditionError, StabilityError
from .linalg import EigenBasis, arcsin_branch, ensure_hermitian, matrix_function


class Scheme(str, enum.Enum):
    """Which pair of lattice instants the difference law references."""

    RETARDED = "retarded"
    SYMMETRIC = "symmetric"
    ADVANCED = "advanced"


@dataclass(frozen=True)
class QuantumState:
    """Complex amplitudes over a fixed basis at a lattice instant.

    The squared norm is tracked but deliberately not constrained to one:
    retarded and advanced evolution change it.
    """

    amplitudes: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if not np.all(np.isfinite(amp)):
            raise DomainError("state amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


def _lattice_steps(t_minus_t0: float, tau: float) -> float:
    """Validate that the duration is a non-negative lattice multiple of tau."""
    if tau <= 0.0:
        raise DomainError("tau must be strictly positive")
    if t_minus_t0 < 0.0:
        raise DomainError("evolution duration must be non-negative")
    k = t_minus_t0 / tau
    if abs(k - round(k)) > 1e-9 * max(1.0, abs(k)):
        raise DomainError(
            f"duration {t_minus_t0!r} is not a lattice multiple of tau={tau!r}; "
            "states are defined only at lattice instants"
        )
    return float(round(k))


def scheme_eigenvalue_factor(
    energies: np.ndarray, scheme: Scheme, k: float, tau: float, hbar: float = HBAR_EV_S
) -> np.ndarray:
    """Per-eigenvalue amplitude factor after k steps of size tau."""
    x = np.asarray(energies, dtype=float) * tau / hbar
    scheme = Scheme(scheme)
    if scheme is Scheme.RETARDED:
        return (1.0 + 1j * x) ** (-k)
    if scheme is Scheme.ADVANCED:
        return (1.0 - 1j * x) ** k
    return np.exp(-1j * k * arcsin_branch(x))


def evolution_operator(
    h: np.ndarray,
    scheme: Scheme,
    t_minus_t0: float,
    tau: float,
    hbar: float = HBAR_EV_S,
) -> np.ndarray:
    """Evolution operator over a whole-number count of chronon steps.

    symmetric: exp[-i ((t-t0)/tau) asin(tau H / hbar)]
    retarded:  [1 + i tau H / hbar]^(-(t-t0)/tau)
    advanced:  [1 - i tau H / hbar]^((t-t0)/tau)
    """
    k = _lattice_steps(t_minus_t0, tau)
    return matrix_function(h, lambda w: scheme_eigenvalue_factor(w, scheme, k, tau, hbar))


def schrodinger_step(
    history: Sequence[QuantumState],
    h: np.ndarray,
    scheme: Scheme,
    tau: float,
    hbar: float = HBAR_EV_S,
) -> QuantumState:
    """Advance one chronon by the scheme's difference law in the eigenbasis.

    Retarded and advanced need one past state; symmetric needs two
    (ordered oldest first).
    """
    scheme = Scheme(scheme)
    need = 2 if scheme is Scheme.SYMMETRIC else 1
    if len(history) < need:
        raise PreconditionError(
            f"{scheme.value} step needs {need} past state(s), got {len(history)}"
        )
    basis = EigenBasis.from_operator(h)
    x = basis.eigenvalues * tau / hbar
    last = history[-1]
    c_last = basis.to_eigenbasis(last.amplitudes)
    if scheme is Scheme.RETARDED:
        c_new = c_last / (1.0 + 1j * x)
    elif scheme is Scheme.ADVANCED:
        c_new = (1.0 - 1j * x) * c_last
    else:
        prev = history[-2]
        if not math.isclose(last.t - prev.t, tau, rel_tol=1e-9):
            raise PreconditionError(
                "symmetric step needs two states exactly one tau apart"
            )
        c_prev = basis.to_eigenbasis(prev.amplitudes)
        c_new = c_prev - 2j * x * c_last
    return QuantumState(basis.from_eigenbasis(c_new), t=last.t + tau)


def evolve(
    psi0: np.ndarray,
    h: np.ndarray,
    scheme: Scheme,
    tau: float,
    n_steps: int,
    hbar: float = HBAR_EV_S,
    bootstrap: str = "retarded",
    t0: float = 0.0,
) -> list[QuantumState]:
    """Step an initial state n_steps chronons, returning the full history.

    For the symmetric scheme the second-order recursion needs a second
    starting value.  ``bootstrap`` picks it:

    - "retarded": one retarded step; O(tau) startup transient.
    - "continuous": exp(-i H tau / hbar); O(tau^3) transient.
    - "exact": the symmetric closed-form operator itself, which selects the
      principal branch so recursion and operator agree to roundoff.
    """
    scheme = Scheme(scheme)
    states = [QuantumState(np.asarray(psi0, dtype=complex), t=t0)]
    if scheme is Scheme.SYMMETRIC and n_steps > 0:
        if bootstrap == "retarded":
            states.append(schrodinger_step(states, h, Scheme.RETARDED, tau, hbar))
        elif bootstrap == "continuous":
            u1 = matrix_function(h, lambda w: np.exp(-1j * w * tau / hbar))
            states.append(QuantumState(u1 @ states[0].amplitudes, t=t0 + tau))
        elif bootstrap == "exact":
            u1 = evolution_operator(h, Scheme.SYMMETRIC, tau, tau, hbar)
            states.append(QuantumState(u1 @ states[0].amplitudes, t=t0 + tau))
        else:
            raise DomainError(f"unknown bootstrap {bootstrap!r}")
    while len(states) < n_steps + 1:
        states.append(schrodinger_step(states, h, scheme, tau, hbar))
    return states


@dataclass(frozen=True)
class NonHermitianSplit:
    """Hermitian split H~ = nu + i kappa of an equivalent Hamiltonian.

    The continuous Schrodinger equation generated by ``nu + i kappa``
    reproduces the discrete scheme at lattice instants.
    """

    nu: np.ndarray
    kappa: np.ndarray

    @property
    def equivalent(self) -> np.ndarray:
        return self.nu + 1j * self.kappa


def equivalent_hamiltonian(
    h: np.ndarray, scheme: Scheme, tau: float, hbar: float = HBAR_EV_S
) -> NonHermitianSplit:
    """Generator of the continuous evolution matching the scheme.

    retarded:  nu = (hbar/tau) atan(tau H/hbar),
               kappa = -(hbar/2 tau) log(1 + tau^2 H^2/hbar^2)
    advanced:  same nu, kappa sign-flipped
    symmetric: nu = (hbar/tau) asin(tau H/hbar), kappa = 0 below the
               critical limit; above it nu saturates at +-hbar pi/(2 tau)
               and kappa turns on logarithmically.
    """
    scheme = Scheme(scheme)
    basis = EigenBasis.from_operator(ensure_hermitian(h))
    x = basis.eigenvalues * tau / hbar
    if scheme is Scheme.SYMMETRIC:
        htilde = (hbar / tau) * arcsin_branch(x)
    else:
        sign = -1.0 if scheme is Scheme.ADVANCED else 1.0
        htilde = (hbar / tau) * np.arctan(x) - sign * 1j * (hbar / (2.0 * tau)) * np.log1p(x * x)
    nu = basis.assemble(np.real(htilde) + 0j)
    kappa = basis.assemble(np.imag(htilde) + 0j)
    return NonHermitianSplit(nu=nu, kappa=kappa)


def decay_and_lifetime(
    e_n: float, tau: float, scheme: Scheme, hbar: float = HBAR_EV_S
) -> tuple[float, float]:
    """Norm decay rate gamma (1/s) and lifetime (s) of an eigenstate.

    retarded: gamma = (1/tau) log(1 + tau^2 E^2 / hbar^2) for every E;
    symmetric: zero below the critical limit, logarithmic above it.
    The advanced scheme amplifies rather than decays and is rejected.
    """
    scheme = Scheme(scheme)
    if scheme is Scheme.ADVANCED:
        raise DomainError("advanced-scheme eigenstates grow; no lifetime is defined")
    x = tau * e_n / hbar
    if scheme is Scheme.RETARDED:
        gamma = math.log1p(x * x) / tau
    else:
        ax = abs(x)
        if ax <= 1.0:
            return 0.0, math.inf
        gamma = 2.0 * math.log(ax + math.sqrt(ax * ax - 1.0)) / tau
    if gamma == 0.0:
        return 0.0, math.inf
    return gamma, 1.0 / gamma


def retarded_state_weight(
    h: np.ndarray, tau: float, t_minus_t0: float, hbar: float = HBAR_EV_S
) -> np.ndarray:
    """State weight [1 + tau^2 H^2/hbar^2]^(-(t-t0)/tau) of the retarded
    Heisenberg picture, where the state itself stays time dependent."""
    k = _lattice_steps(t_minus_t0, tau)
    return matrix_function(h, lambda w: (1.0 + (tau * w / hbar) ** 2) ** (-k))


@dataclass(frozen=True)
class HeisenbergIncrement:
    """One finite-difference increment of a Heisenberg-picture operator.

    ``increment`` is the actual difference quotient of U† A U;
    ``commutator_rhs`` is the conjugated commutator law it is compared
    against.  For the symmetric scheme the two agree to O((tau E/hbar)^2).
    """

    increment: np.ndarray
    commutator_rhs: np.ndarray

    @property
    def residual(self) -> float:
        return float(np.linalg.norm(self.increment - self.commutator_rhs))


def heisenberg_delta(
    a: np.ndarray,
    h: np.ndarray,
    scheme: Scheme,
    tau: float,
    t: float,
    hbar: float = HBAR_EV_S,
) -> HeisenbergIncrement:
    """Finite-difference time increment of A in the Heisenberg picture.

    symmetric: central difference of U†(t) A U(t) against [A_H, H]/(i hbar).
    retarded:  backward difference against the non-unitary conjugation of
               [A, H]/(i hbar) - (tau/hbar^2) H A H, the exact dissipative law.
    """
    scheme = Scheme(scheme)
    a = np.asarray(a, dtype=complex)
    h = ensure_hermitian(h)

    def conjugated(at_time: float) -> np.ndarray:
        u = evolution_operator(h, scheme, at_time, tau, hbar)
        return u.conj().T @ a @ u

    if scheme is Scheme.SYMMETRIC:
        if t < tau:
            raise PreconditionError("central difference needs t >= tau")
        increment = (conjugated(t + tau) - conjugated(t - tau)) / (2.0 * tau)
        a_h = conjugated(t)
        rhs = (a_h @ h - h @ a_h) / (1j * hbar)
    elif scheme is Scheme.RETARDED:
        if t < tau:
            raise PreconditionError("backward difference needs t >= tau")
        increment = (conjugated(t) - conjugated(t - tau)) / tau
        law = (a @ h - h @ a) / (1j * hbar) - (tau / hbar**2) * (h @ a @ h)
        u = evolution_operator(h, scheme, t, tau, hbar)
        rhs = u.conj().T @ law @ u
    else:
        increment = (conjugated(t + tau) - conjugated(t)) / tau
        law = (a @ h - h @ a) / (1j * hbar) + (tau / hbar**2) * (h @ a @ h)
        u = evolution_operator(h, scheme, t, tau, hbar)
        rhs = u.conj().T @ law @ u
    return HeisenbergIncrement(increment=increment, commutator_rhs=rhs)


def discrete_transition_frequencies(
    energies: np.ndarray, tau: float, hbar: float = HBAR_EV_S
) -> np.ndarray:
    """Matrix omega[n, m] = (asin(tau E_n/hbar) - asin(tau E_m/hbar)) / tau.

    All eigenvalues must sit below the critical limit |tau E/hbar| < 1.
    """
    x = np.asarray(energies, dtype=float) * tau / hbar
    if np.any(np.abs(x) >= 1.0):
        worst = int(np.argmax(np.abs(x)))
        raise StabilityError(
            f"eigenvalue index {worst} exceeds the critical limit |tau E/hbar| < 1 "
            f"(|x| = {abs(x[worst]):.6g})"
        )
    alpha = np.arcsin(x) / tau
    return alpha[:, None] - alpha[None, :]


@dataclass(frozen=True)
class PerturbationResult:
    """Coefficient trajectories of a time-dependent perturbation solve."""

    times: np.ndarray
    coefficients: np.ndarray  # shape (n_times, dim), interaction picture
    energies: np.ndarray
    basis: EigenBasis


def perturbation_solve(
    h0: np.ndarray,
    v_t: Callable[[float], np.ndarray],
    psi0: np.ndarray,
    tau: float,
    t_final: float,
    hbar: float = HBAR_EV_S,
) -> PerturbationResult:
    """Interaction-picture coefficients under a weak time-dependent V(t).

    Advances i hbar Delta c_n = sum_m V_nm(t) exp(i omega_nm t) c_m(t) with
    the symmetric central-difference law, omega_nm built from the asin-shifted
    level frequencies.  ``v_t`` returns the perturbation matrix in the same
    basis as ``h0``; it is projected onto the h0 eigenbasis internally.
    """
    basis = EigenBasis.from_operator(h0)
    omega = discrete_transition_frequencies(basis.eigenvalues, tau, hbar)
    n_steps = int(_lattice_steps(t_final, tau))
    c = np.empty((n_steps + 1, basis.dim), dtype=complex)
    c[0] = basis.to_eigenbasis(np.asarray(psi0, dtype=complex))

    def rhs(t: float, coeff: np.ndarray) -> np.ndarray:
        v = basis.eigenvectors.conj().T @ np.asarray(v_t(t), dtype=complex) @ basis.eigenvectors
        return (v * np.exp(1j * omega * t)) @ coeff / (1j * hbar)

    if n_steps >= 1:
        # midpoint bootstrap keeps the startup transient at O(tau^3)
        half = c[0] + 0.5 * tau * rhs(0.0, c[0])
        c[1] = c[0] + tau * rhs(0.5 * tau, half)
    for k in range(1, n_steps):
        c[k + 1] = c[k - 1] + 2.0 * tau * rhs(k * tau, c[k])
    times = np.arange(n_steps + 1) * tau
    return PerturbationResult(times=times, coefficients=c, energies=basis.eigenvalues, basis=basis)


def dyson_first_order(
    h0: np.ndarray,
    v_t: Callable[[float], np.ndarray],
    initial_index: int,
    tau: float,
    t_final: float,
    hbar: float = HBAR_EV_S,
) -> PerturbationResult:
    """First-order Dyson coefficients on the lattice, for cross-checks.

    c_n(t) = delta_ni - (i/hbar) integral_0^t V_ni(t') exp(i omega_ni t') dt',
    integrated by the trapezoid rule over lattice instants, with the same
    discrete omega_ni as :func:`perturbation_solve`.
    """
    basis = EigenBasis.from_operator(h0)
    omega = discrete_transition_frequencies(basis.eigenvalues, tau, hbar)[:, initial_index]
    n_steps = int(_lattice_steps(t_final, tau))
    times = np.arange(n_steps + 1) * tau
    integrand = np.empty((n_steps + 1, basis.dim), dtype=complex)
    for k, t in enumerate(times):
        v = basis.eigenvectors.conj().T @ np.asarray(v_t(t), dtype=complex) @ basis.eigenvectors
        integrand[k] = v[:, initial_index] * np.exp(1j * omega * t)
    c = np.zeros((n_steps + 1, basis.dim), dtype=complex)
    c[:, initial_index] = 1.0
    if n_steps >= 1:
        cumulative = np.concatenate(
            [np.zeros((1, basis.dim)), np.cumsum(0.5 * (integrand[1:] + integrand[:-1]), axis=0) * tau]
        )
        c += -1j / hbar * cumulative
    return PerturbationResult(times=times, coefficients=c, energies=basis.eigenvalues, basis=basis)
