"""Excited-state mass ladder of the leptons and micro-universe radii.

Each excitation multiplies the rest energy by the ladder factor
3/(2 alpha) + 1; a second index p in {0, 1} switches on a magnetic
self-coupling contribution (1 + (2p)^4).  The same ladder contracts the
de Sitter micro-universe radius, so radius times excitation energy is an
exact invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .constants import CODATA, ChrononParams, PhysicalConstants, chronon_for
from .errors import DomainError


def ladder_factor(constants: PhysicalConstants = CODATA) -> float:
    """Mass ratio 3/(2 alpha) + 1 between consecutive excitations."""
    return 1.5 / constants.alpha_fs + 1.0


def excitation_energy(n: int, constants: PhysicalConstants = CODATA) -> float:
    """Rest energy m0 c^2 [3/(2 alpha) + 1]^n of the n-th excitation (eV)."""
    if n < 0:
        raise DomainError("excitation index must be non-negative")
    return constants.m_electron_c2 * ladder_factor(constants) ** n


def mass(n: int, p: int, constants: PhysicalConstants = CODATA) -> float:
    """Mass m0 [1 + (2p)^4] [3/(2 alpha) + 1]^n of state (n, p) (eV).

    p = 1 is disallowed at n = 0: the ground state admits no magnetic
    self-coupling excitation under the confinement condition.
    """
    if p not in (0, 1):
        raise DomainError("magnetic-coupling index p must be 0 or 1")
    if n == 0 and p == 1:
        raise DomainError("p = 1 is not attainable at n = 0")
    return (1.0 + (2.0 * p) ** 4) * excitation_energy(n, constants)


class MuonMassEstimate(NamedTuple):
    critical_energy: float   # hbar / theta0 (eV)
    with_rest_energy: float  # plus the electron rest energy (eV)


def muon_mass_via_critical_energy(
    chronon: ChrononParams, constants: PhysicalConstants = CODATA
) -> MuonMassEstimate:
    """Muon mass from the largest stable eigenvalue hbar / theta0.

    Expects a chronon derived from the classical-electron formula; the
    critical energy plus the electron rest energy is the estimate.
    """
    if chronon.source != "classical-electron-formula":
        raise DomainError(
            "muon mass estimate needs a chronon from the classical-electron formula"
        )
    e_max = constants.hbar / chronon.theta0
    return MuonMassEstimate(e_max, e_max + constants.m_electron_c2)


def micro_universe_radius(
    n: int, chronon: ChrononParams, constants: PhysicalConstants = CODATA
) -> float:
    """Radius a(n) = tau0 c [3/(2 alpha) + 1]^(-n) of the n-th state (m)."""
    if n < 0:
        raise DomainError("excitation index must be non-negative")
    return chronon.tau * constants.c * ladder_factor(constants) ** (-n)


def uncertainty_bound(constants: PhysicalConstants = CODATA) -> float:
    """Shortest proper-time window over which an electron rest mass is sharp.

    With the mass gap to the first excited state at (3/2)(1/alpha) m0 c^2,
    hbar/(2 dE) evaluates to half a chronon, so consecutive distinguishable
    states are separated by at least one full chronon.
    """
    delta_e = 1.5 / constants.alpha_fs * constants.m_electron_c2
    return constants.hbar / (2.0 * delta_e)


def magnetic_moment(n: int, constants: PhysicalConstants = CODATA) -> float:
    """Intrinsic magnetic moment e^3/(4 pi m(n,0) c^2) of excitation n."""
    return constants.e_charge**3 / (4.0 * math.pi * excitation_energy(n, constants))


@dataclass(frozen=True)
class SpectrumEntry:
    """One row of the mass table."""

    n: int
    p: int
    mass_c2: float      # eV
    radius: float       # m
    mu_a: float         # internal Gaussian units
    label: str
    extrapolated: bool  # beyond the observed electron/muon/tau triplet


_LABELS = {(0, 0): "electron", (1, 0): "muon", (1, 1): "tau"}


def spectrum_table(
    n_max: int = 2, constants: PhysicalConstants = CODATA
) -> list[SpectrumEntry]:
    """Mass table up to excitation n_max, flagged beyond the known states."""
    chronon = chronon_for(constants.m_electron_c2, constants=constants)
    rows = []
    for n in range(n_max + 1):
        for p in (0, 1):
            if n == 0 and p == 1:
                continue
            rows.append(
                SpectrumEntry(
                    n=n,
                    p=p,
                    mass_c2=mass(n, p, constants),
                    radius=micro_universe_radius(n, chronon, constants),
                    mu_a=magnetic_moment(n, constants),
                    label=_LABELS.get((n, p), "model extrapolation"),
                    extrapolated=(n, p) not in _LABELS,
                )
            )
    return rows
