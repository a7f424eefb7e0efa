"""Hydrogen-like level energies and discrete transition-frequency shifts.

Level energies are the usual Bohr/fine-structure values; time
discretization leaves them untouched and shifts only the transition
frequencies.  The symmetric scheme shifts omega_fi by
(E_f^3 - E_i^3) tau^2 / (6 hbar^3) to leading order; the retarded scheme
gives a complex frequency whose imaginary part damps the transition
amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import CODATA, PhysicalConstants
from .errors import DomainError, StabilityError
from .evolution import Scheme


def rydberg_energy(constants: PhysicalConstants = CODATA) -> float:
    """alpha^2 m_e c^2 / 2 in eV."""
    return 0.5 * constants.alpha_fs**2 * constants.m_electron_c2


def bohr_level(
    n: int, z: int = 1, mass_scale: float = 1.0, constants: PhysicalConstants = CODATA
) -> float:
    """Binding energy -Ry Z^2 (mu/m_e) / n^2 in eV (negative).

    ``mass_scale`` is the reduced mass in electron masses; use ~186 for
    muonic hydrogen.
    """
    if n < 1:
        raise DomainError("principal quantum number must be >= 1")
    return -rydberg_energy(constants) * z * z * mass_scale / (n * n)


@dataclass(frozen=True)
class HydrogenLevel:
    """Level energy with optional rest-mass, hyperfine and radiative terms."""

    n: int
    j: float
    energy: float          # eV
    includes_rest: bool
    hf_term: float         # user-supplied placeholder, eV
    lamb_term: float       # user-supplied placeholder, eV


def level_energy(
    n: int,
    j: float = 0.5,
    include_rest: bool = False,
    hf_term: float = 0.0,
    lamb_term: float = 0.0,
    constants: PhysicalConstants = CODATA,
) -> HydrogenLevel:
    """Fine-structure expansion of the (n, j) level.

    E = [m_e c^2] - Ry/n^2 - (m_e c^2 alpha^4 / 2 n^4)(n/(j+1/2) - 3/4)
        + hf + Lamb,
    with the rest energy included only on request.  The hyperfine and
    radiative terms are not computed here; callers supply measured values
    when they need them.
    """
    if n < 1:
        raise DomainError("principal quantum number must be >= 1")
    if j < 0.5 or j > n - 0.5 or (j * 2.0) != int(j * 2.0):
        raise DomainError("j must be a half-integer in [1/2, n - 1/2]")
    mc2 = constants.m_electron_c2
    alpha = constants.alpha_fs
    e = -rydberg_energy(constants) / n**2
    e -= mc2 * alpha**4 / (2.0 * n**4) * (n / (j + 0.5) - 0.75)
    e += hf_term + lamb_term
    if include_rest:
        e += mc2
    return HydrogenLevel(
        n=n, j=j, energy=e, includes_rest=include_rest, hf_term=hf_term, lamb_term=lamb_term
    )


def symmetric_deviation_prefactor(tau: float, constants: PhysicalConstants = CODATA) -> float:
    """Leading shift coefficient tau^2 / (6 hbar^3) in rad/s per eV^3."""
    return tau * tau / (6.0 * constants.hbar**3)


def _asin_minus_x(x: float) -> float:
    """asin(x) - x without cancellation for small x."""
    if abs(x) < 1e-3:
        x2 = x * x
        return x * x2 * (1.0 / 6.0 + x2 * (3.0 / 40.0 + x2 * (15.0 / 336.0 + x2 * 105.0 / 3456.0)))
    return math.asin(x) - x


def _atan_minus_x(x: float) -> float:
    """atan(x) - x without cancellation for small x."""
    if abs(x) < 1e-3:
        x2 = x * x
        return -x * x2 * (1.0 / 3.0 - x2 * (1.0 / 5.0 - x2 * (1.0 / 7.0 - x2 / 9.0)))
    return math.atan(x) - x


@dataclass(frozen=True)
class TransitionShift:
    """Discrete transition frequency between two levels.

    ``omega_fi`` is complex; its imaginary part is zero for the symmetric
    scheme and negative (a decay rate) for the retarded one.  Deviations are
    measured against the continuous Bohr frequency (E_f - E_i)/hbar.
    """

    e_initial: float
    e_final: float
    scheme: Scheme
    omega_fi: complex               # rad/s (+ i / s)
    bohr_omega: float               # rad/s
    deviation_omega: float          # Re(omega_fi) - bohr_omega, rad/s
    first_order_deviation: float    # series estimate, rad/s
    im_omega: float                 # Im(omega_fi), 1/s; 0 for symmetric

    @property
    def deviation_hz(self) -> float:
        return self.deviation_omega / (2.0 * math.pi)


def hydrogen_transition(
    e_initial: float,
    e_final: float,
    tau: float,
    scheme: Scheme = Scheme.SYMMETRIC,
    constants: PhysicalConstants = CODATA,
) -> TransitionShift:
    """Transition frequency i -> f between two level energies (eV).

    symmetric: omega_fi = (1/tau)[asin(tau E_f/hbar) - asin(tau E_i/hbar)],
    deviating from Bohr by ~ (E_f^3 - E_i^3) tau^2 / 6 hbar^3.
    retarded: omega_fi = (-i/tau)[log(1 + i tau E_f/hbar) - log(1 + i tau E_i/hbar)],
    whose real deviation is ~ -(E_f^3 - E_i^3) tau^2 / 3 hbar^3 and whose
    imaginary part ~ -(E_f^2 - E_i^2) tau / 2 hbar^2 damps the transition.
    """
    scheme = Scheme(scheme)
    hbar = constants.hbar
    xi = tau * e_initial / hbar
    xf = tau * e_final / hbar
    if max(abs(xi), abs(xf)) >= 1.0:
        raise StabilityError(
            "both levels must sit below the critical limit |tau E/hbar| < 1"
        )
    bohr = (e_final - e_initial) / hbar
    # deviations evaluated via cancellation-free asin(x)-x / atan(x)-x forms:
    # the direct difference of near-equal transcendentals drowns in roundoff
    # at physical chronon scales
    if scheme is Scheme.SYMMETRIC:
        deviation = (_asin_minus_x(xf) - _asin_minus_x(xi)) / tau
        im_omega = 0.0
        first_order = (e_final**3 - e_initial**3) * symmetric_deviation_prefactor(tau, constants)
    elif scheme is Scheme.RETARDED:
        deviation = (_atan_minus_x(xf) - _atan_minus_x(xi)) / tau
        im_omega = -(math.log1p(xf * xf) - math.log1p(xi * xi)) / (2.0 * tau)
        first_order = -2.0 * (e_final**3 - e_initial**3) * symmetric_deviation_prefactor(
            tau, constants
        )
    else:
        raise DomainError("hydrogen transitions support the symmetric and retarded schemes")
    return TransitionShift(
        e_initial=e_initial,
        e_final=e_final,
        scheme=scheme,
        omega_fi=complex(bohr + deviation, im_omega),
        bohr_omega=bohr,
        deviation_omega=deviation,
        first_order_deviation=first_order,
        im_omega=im_omega,
    )


def transition_probability_envelope(omega_fi: float, omega: float, t: float) -> float:
    """Resonance envelope sin^2[(omega_fi - omega) t / 2] / (omega_fi - omega)^2.

    At exact resonance the limit (t/2)^2 is returned.
    """
    detuning = omega_fi - omega
    if detuning == 0.0:
        return (t / 2.0) ** 2
    return math.sin(detuning * t / 2.0) ** 2 / detuning**2


def muonic_reduced_mass_scale(constants: PhysicalConstants = CODATA) -> float:
    """Reduced mass of a muon-proton atom in electron masses (~186)."""
    from .constants import M_MUON_C2, M_PROTON_C2

    mu = M_MUON_C2 * M_PROTON_C2 / (M_MUON_C2 + M_PROTON_C2)
    return mu / constants.m_electron_c2
