import numpy as np
import pytest

from chronon_lab import (
    DomainError,
    EigenBasis,
    arccos_branch,
    arcsin_branch,
    ensure_hermitian,
    matrix_function,
)
from chronon_lab.constants import HBAR_EV_S


def random_hermitian(dim, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (m + m.conj().T)


def test_identity_function_returns_input():
    h = random_hermitian(5, 1)
    out = matrix_function(h, lambda w: w.astype(complex))
    assert np.linalg.norm(out - h) <= 1e-12 * np.linalg.norm(h)


def test_exponential_phase_on_diagonal():
    energies = np.array([1.0, -2.0, 0.5])
    h = np.diag(energies).astype(complex)
    t = 3e-16
    out = matrix_function(h, lambda w: np.exp(-1j * t * w / HBAR_EV_S))
    expected = np.diag(np.exp(-1j * t * energies / HBAR_EV_S))
    assert np.allclose(out, expected, atol=1e-15)


def test_asin_matrix_against_scalar_reassembly():
    # brute-force oracle: eigendecompose independently, apply scalar asin,
    # reassemble by explicit outer-product sum
    tau = 6.266e-24
    h = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)  # eigenvalues +-1 eV
    out = matrix_function(h, lambda w: arcsin_branch(tau * w / HBAR_EV_S))
    w, v = np.linalg.eigh(h)
    expected = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        expected += complex(np.arcsin(tau * w[i] / HBAR_EV_S)) * np.outer(v[:, i], v[:, i].conj())
    assert np.allclose(out, expected, atol=1e-15)


def test_matrix_function_commutes_with_operator():
    h = random_hermitian(6, 2)
    f_h = matrix_function(h, lambda w: np.exp(1j * w))
    comm = f_h @ h - h @ f_h
    bound = 1e-10 * np.linalg.norm(h) * np.linalg.norm(f_h)
    assert np.linalg.norm(comm) <= bound


def test_matrix_function_respects_composition():
    for seed in range(5):
        h = random_hermitian(6, seed + 10)
        g = lambda w: np.tanh(w)
        f = lambda w: w**2 + 0.5
        once = matrix_function(h, lambda w: f(g(w)))
        twice = matrix_function(ensure_hermitian(matrix_function(h, g)), f)
        assert np.linalg.norm(once - twice) <= 1e-9 * max(1.0, np.linalg.norm(once))


def test_ensure_hermitian_symmetrizes_and_rejects():
    h = random_hermitian(4, 3)
    nudged = h.copy()
    nudged[0, 1] += 1e-14 * np.linalg.norm(h) * 1j  # inside tolerance
    sym = ensure_hermitian(nudged)
    assert np.allclose(sym, sym.conj().T)
    bad = h.copy()
    bad[0, 1] += 1.0
    with pytest.raises(DomainError):
        ensure_hermitian(bad)
    with pytest.raises(DomainError):
        ensure_hermitian(np.zeros((2, 3)))


def test_eigenbasis_reconstruction_and_unitarity():
    h = random_hermitian(8, 4)
    basis = EigenBasis.from_operator(h)
    err = np.linalg.norm(basis.reconstruct() - h)
    assert err <= 1e-10 * np.linalg.norm(h)
    v = basis.eigenvectors
    assert np.linalg.norm(v.conj().T @ v - np.eye(8)) <= 1e-12 * 8


def test_arcsin_branch_decaying_side():
    val = arcsin_branch(1.2)
    assert val.real == pytest.approx(np.pi / 2)
    assert val.imag == pytest.approx(-np.log(1.2 + np.sqrt(0.44)))
    neg = arcsin_branch(-1.2)
    assert neg == pytest.approx(-val)  # odd function
    # exp(-i k asin) decays with k above +1; the odd continuation makes the
    # mirror eigenvalue the time-reversed (growing) partner
    assert abs(np.exp(-1j * 5 * val)) < 1.0
    assert abs(np.exp(-1j * 5 * neg)) > 1.0
    inside = arcsin_branch(np.array([-1.0, -0.3, 0.0, 1.0]))
    assert np.allclose(inside.imag, 0.0)


def test_arccos_branch_consistent_with_arcsin():
    x = np.array([0.3, 0.9, 1.0, 1.5, 3.0])
    lhs = arccos_branch(1.0 - 2.0 * x * x)
    rhs = 2.0 * arcsin_branch(x)
    assert np.allclose(lhs, rhs, atol=1e-12)
    with pytest.raises(DomainError):
        arccos_branch(1.5)
