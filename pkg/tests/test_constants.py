import math

import pytest

from chronon_lab import (
    CODATA,
    PAPER,
    ChrononParams,
    DomainError,
    PhysicalConstants,
    chronon_for,
    chronon_uncertainty_limit,
    critical_energy,
)


def test_electron_chronon_value():
    ch = chronon_for(0.511e6, constants=PAPER)
    assert ch.theta0 == pytest.approx(6.266e-24, rel=1e-3)
    assert ch.tau == pytest.approx(2.0 * ch.theta0)
    # paper profile reproduces the printed digits
    assert round(ch.theta0 * 1e24, 3) == 6.266


def test_muon_chronon_value():
    ch = chronon_for(105.66e6)
    assert ch.theta0 == pytest.approx(3.03e-26, rel=2e-3)


def test_chronon_scales_inversely_with_mass():
    base = chronon_for(0.511e6)
    doubled = chronon_for(2 * 0.511e6)
    assert doubled.theta0 == pytest.approx(base.theta0 / 2.0, rel=1e-14)


def test_chronon_homogeneous_in_charge_sq_over_mass():
    base = chronon_for(0.511e6, charge=1.0)
    scaled = chronon_for(0.511e6 * 3.0, charge=math.sqrt(3.0))
    assert scaled.theta0 == pytest.approx(base.theta0, rel=1e-14)


def test_chronon_rejects_nonpositive_mass():
    with pytest.raises(DomainError):
        chronon_for(0.0)
    with pytest.raises(DomainError):
        chronon_for(-1.0)


def test_profiles():
    assert CODATA.alpha_fs == pytest.approx(1 / 137.035999084)
    assert PAPER.m_electron_c2 == 0.511e6
    assert abs(CODATA.alpha_fs - 7.2973525e-3) < 1e-6
    assert abs(PAPER.alpha_fs - 7.2973525e-3) < 1e-6
    with pytest.raises(DomainError):
        PhysicalConstants.profile("nonsense")


def test_constants_positive_validation():
    with pytest.raises(DomainError):
        PhysicalConstants(
            hbar=-1.0, c=1.0, k_coulomb=1.0, e_charge=1.0,
            m_electron_c2=1.0, alpha_fs=7.2973525e-3,
        )


def test_user_supplied_chronon():
    ch = ChrononParams.user_supplied(1e-20)
    assert ch.source == "user-supplied"
    assert ch.theta0 == 5e-21


def test_uncertainty_limit_and_critical_energy():
    assert chronon_uncertainty_limit(0.511e6) == pytest.approx(6.4e-22, rel=0.02)
    assert critical_energy(1e-13) == pytest.approx(6.582119569e-3)
