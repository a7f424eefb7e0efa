"""Physical constants, unit profiles, and the chronon time scale.

Internal unit system: energies in eV, times in seconds, lengths in metres.
Charge is Gaussian-style with the Coulomb constant equal to one, so
``e**2 = alpha_fs * hbar * c`` carries units of eV*m and a Coulomb energy
is simply ``e**2 / r``.

Two constant profiles are provided.  ``codata`` uses CODATA 2018 values and
is the default.  ``paper`` fixes the electron rest energy at 0.511 MeV
exactly and uses a fine-structure constant fitted so the golden-number
tables (lepton masses, chronon value) round to their historically printed
digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

HBAR_EV_S = 6.582119569e-16
"""Reduced Planck constant (eV s)."""

SPEED_OF_LIGHT = 299792458.0
"""Speed of light (m/s)."""

ALPHA_CODATA = 1.0 / 137.035999084
ALPHA_PAPER = 1.0 / 137.03585
M_ELECTRON_C2_CODATA = 510998.95      # eV
M_ELECTRON_C2_PAPER = 0.511e6         # eV, comparison-profile value
M_MUON_C2 = 105.6583755e6             # eV
M_PROTON_C2 = 938.27208816e6          # eV

PROFILE_NAMES = ("codata", "paper")


@dataclass(frozen=True)
class PhysicalConstants:
    """Bundle of the constants every other module consumes.

    Attributes
    ----------
    hbar : float
        Reduced Planck constant (eV s).
    c : float
        Speed of light (m/s).
    k_coulomb : float
        Coulomb constant; 1 in the internal Gaussian-style units.
    e_charge : float
        Elementary charge, ``sqrt(alpha_fs * hbar * c)`` ((eV m)^(1/2)).
    m_electron_c2 : float
        Electron rest energy (eV).
    alpha_fs : float
        Fine-structure constant.
    name : str
        Profile label ("codata" or "paper").
    """

    hbar: float
    c: float
    k_coulomb: float
    e_charge: float
    m_electron_c2: float
    alpha_fs: float
    name: str = "custom"

    def __post_init__(self):
        for field in ("hbar", "c", "k_coulomb", "e_charge", "m_electron_c2", "alpha_fs"):
            if getattr(self, field) <= 0.0:
                raise DomainError(f"constant {field} must be strictly positive")
        if abs(self.alpha_fs - 7.2973525e-3) > 1e-6:
            raise DomainError(
                f"alpha_fs={self.alpha_fs!r} is not within 1e-6 of 7.2973525e-3"
            )

    @property
    def hbar_c(self) -> float:
        """hbar * c (eV m)."""
        return self.hbar * self.c

    @classmethod
    def codata(cls) -> "PhysicalConstants":
        return cls(
            hbar=HBAR_EV_S,
            c=SPEED_OF_LIGHT,
            k_coulomb=1.0,
            e_charge=math.sqrt(ALPHA_CODATA * HBAR_EV_S * SPEED_OF_LIGHT),
            m_electron_c2=M_ELECTRON_C2_CODATA,
            alpha_fs=ALPHA_CODATA,
            name="codata",
        )

    @classmethod
    def paper(cls) -> "PhysicalConstants":
        return cls(
            hbar=HBAR_EV_S,
            c=SPEED_OF_LIGHT,
            k_coulomb=1.0,
            e_charge=math.sqrt(ALPHA_PAPER * HBAR_EV_S * SPEED_OF_LIGHT),
            m_electron_c2=M_ELECTRON_C2_PAPER,
            alpha_fs=ALPHA_PAPER,
            name="paper",
        )

    @classmethod
    def profile(cls, name: str) -> "PhysicalConstants":
        if name == "codata":
            return cls.codata()
        if name == "paper":
            return cls.paper()
        raise DomainError(f"unknown constants profile {name!r}; expected one of {PROFILE_NAMES}")


CODATA = PhysicalConstants.codata()
PAPER = PhysicalConstants.paper()


@dataclass(frozen=True)
class ChrononParams:
    """Fundamental time interval of a particle.

    ``theta0`` is the single chronon; ``tau`` is the proper-time step of the
    classical electron worldline, two chronons by convention.  Quantum
    evolution routines take a plain ``tau`` float, so callers choose which
    of the two scales to feed them.
    """

    tau: float
    theta0: float
    source: str = "classical-electron-formula"

    def __post_init__(self):
        if self.tau <= 0.0 or self.theta0 <= 0.0:
            raise DomainError("chronon intervals must be strictly positive")

    @classmethod
    def user_supplied(cls, tau: float) -> "ChrononParams":
        return cls(tau=tau, theta0=tau / 2.0, source="user-supplied")


def chronon_for(
    m0_c2: float,
    charge: float = 1.0,
    constants: PhysicalConstants = CODATA,
) -> ChrononParams:
    """Chronon of a point charge from its rest energy.

    theta0 = (2/3) k e^2 / (m0 c^3) seconds, with tau = 2 theta0.

    Parameters
    ----------
    m0_c2 : float
        Rest energy in eV.
    charge : float
        Charge in units of the elementary charge.
    """
    if m0_c2 <= 0.0:
        raise DomainError("chronon_for requires a strictly positive rest energy")
    e2 = constants.k_coulomb * (charge * constants.e_charge) ** 2
    theta0 = (2.0 / 3.0) * e2 / (m0_c2 * constants.c)
    return ChrononParams(tau=2.0 * theta0, theta0=theta0)


def chronon_uncertainty_limit(m0_c2: float, constants: PhysicalConstants = CODATA) -> float:
    """Upper bound hbar / (2 m0 c^2) on the chronon of a particle (seconds)."""
    if m0_c2 <= 0.0:
        raise DomainError("rest energy must be strictly positive")
    return constants.hbar / (2.0 * m0_c2)


def critical_energy(tau: float, constants: PhysicalConstants = CODATA) -> float:
    """Largest stable eigenvalue hbar / tau of the symmetric scheme (eV)."""
    if tau <= 0.0:
        raise DomainError("tau must be strictly positive")
    return constants.hbar / tau
