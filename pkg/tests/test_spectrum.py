import pytest

from chronon_lab import (
    CODATA,
    PAPER,
    DomainError,
    chronon_for,
    excitation_energy,
    ladder_factor,
    mass,
    micro_universe_radius,
    muon_mass_via_critical_energy,
    spectrum_table,
    uncertainty_bound,
)
from chronon_lab.constants import ChrononParams
from chronon_lab.spectrum import magnetic_moment

MEV = 1e6


def test_excitation_ladder_printed_values():
    assert excitation_energy(0, PAPER) == pytest.approx(0.511 * MEV)
    assert excitation_energy(1, PAPER) == pytest.approx(105.55 * MEV, rel=1e-3)
    assert excitation_energy(2, PAPER) == pytest.approx(21801.54 * MEV, rel=1e-3)
    # paper profile reproduces the printed digits exactly
    assert round(excitation_energy(1, PAPER) / MEV, 2) == 105.55
    assert round(excitation_energy(2, PAPER) / MEV, 2) == 21801.54


def test_mass_table():
    assert mass(0, 0, PAPER) == pytest.approx(0.511 * MEV)
    assert mass(1, 0, PAPER) == pytest.approx(105.55 * MEV, rel=1e-3)
    assert mass(1, 1, PAPER) == pytest.approx(1794.33 * MEV, rel=1e-3)
    assert round(mass(1, 1, PAPER) / MEV, 2) == 1794.33
    # within 1% of the measured heavy-lepton mass
    assert mass(1, 1, PAPER) == pytest.approx(1784.0 * MEV, rel=0.01)


def test_mass_invariants():
    assert mass(2, 0, CODATA) == excitation_energy(2, CODATA)
    ratio = mass(1, 0, CODATA) / mass(0, 0, CODATA)
    assert ratio == pytest.approx(ladder_factor(CODATA), rel=1e-12)
    for p in (0, 1):
        masses = [mass(n, p, CODATA) for n in range(1, 5)]
        assert all(b > a for a, b in zip(masses, masses[1:]))


def test_mass_domain_errors():
    with pytest.raises(DomainError):
        mass(0, 1)
    with pytest.raises(DomainError):
        mass(1, 2)
    with pytest.raises(DomainError):
        excitation_energy(-1)


def test_muon_mass_via_critical_energy():
    ch = chronon_for(PAPER.m_electron_c2, constants=PAPER)
    est = muon_mass_via_critical_energy(ch, PAPER)
    assert est.critical_energy == pytest.approx(105.04 * MEV, rel=5e-4)
    assert est.with_rest_energy == pytest.approx(105.55 * MEV, rel=5e-4)
    # consistency across the two routes to the first excitation
    assert est.with_rest_energy == pytest.approx(excitation_energy(1, PAPER), rel=5e-3)
    with pytest.raises(DomainError):
        muon_mass_via_critical_energy(ChrononParams.user_supplied(1e-24), PAPER)


def test_micro_universe_radii():
    ch = chronon_for(CODATA.m_electron_c2)
    a0 = micro_universe_radius(0, ch)
    assert a0 == pytest.approx(ch.tau * CODATA.c, rel=1e-14)
    ratio = micro_universe_radius(1, ch) / a0
    assert ratio == pytest.approx(1.0 / 206.55, rel=1e-4)
    # radius times excitation energy is n-invariant
    for n in range(0, 5):
        product = micro_universe_radius(n, ch) * excitation_energy(n)
        assert product == pytest.approx(ch.tau * CODATA.c * CODATA.m_electron_c2, rel=1e-12)


def test_uncertainty_bound_is_half_a_chronon():
    ch = chronon_for(PAPER.m_electron_c2, constants=PAPER)
    bound = uncertainty_bound(PAPER)
    assert bound == pytest.approx(ch.theta0 / 2.0, rel=1e-12)
    assert 2.0 * bound == pytest.approx(ch.theta0, rel=1e-12)


def test_magnetic_moment_halves_with_doubled_mass():
    mu0 = magnetic_moment(0)
    assert mu0 == pytest.approx(
        CODATA.e_charge**3 / (4.0 * 3.141592653589793 * CODATA.m_electron_c2), rel=1e-14
    )
    # mu ~ 1/m along the ladder
    assert magnetic_moment(1) / mu0 == pytest.approx(1.0 / ladder_factor(CODATA), rel=1e-12)


def test_spectrum_table_flags_extrapolations():
    rows = spectrum_table(2, PAPER)
    by_key = {(r.n, r.p): r for r in rows}
    assert not by_key[(0, 0)].extrapolated and by_key[(0, 0)].label == "electron"
    assert not by_key[(1, 0)].extrapolated and by_key[(1, 0)].label == "muon"
    assert not by_key[(1, 1)].extrapolated and by_key[(1, 1)].label == "tau"
    assert by_key[(2, 0)].extrapolated and by_key[(2, 1)].extrapolated
    assert (0, 1) not in by_key
