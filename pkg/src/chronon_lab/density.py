"""Discretized Liouville-von Neumann dynamics and coarse-grained decoherence.

The Liouvillian is normalized to angular-frequency units, L rho = [H, rho]/hbar,
so the coarse-grained map is V_CG = (1 + i tau L)^(-k) and its matrix elements
damp off-diagonals by exactly gamma_rs = (1/2 tau) log(1 + omega_rs^2 tau^2).
The full retarded map V (with the mixed H rho H term) damps diagonals too;
quantifying the difference between the two is part of the public API, since
which one is "the" physical evolution is an unresolved modelling choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .constants import HBAR_EV_S
from .errors import DomainError, PreconditionError
from .evolution import Scheme
from .linalg import EigenBasis, arcsin_branch, ensure_hermitian

TRACE_RTOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian state matrix at a lattice instant.

    Hermiticity is enforced on construction; positivity is only checked when
    ``require_positive`` is set (appropriate at t = 0) because the
    non-unitary maps here need not preserve it.
    """

    rho: np.ndarray
    t: float = 0.0
    require_positive: bool = False

    def __post_init__(self):
        rho = ensure_hermitian(np.asarray(self.rho, dtype=complex))
        if self.require_positive:
            w = np.linalg.eigvalsh(rho)
            if np.any(w < -1e-10):
                raise DomainError(f"density matrix has negative eigenvalue {w.min():.3e}")
        object.__setattr__(self, "rho", rho)

    @property
    def trace(self) -> float:
        return float(np.trace(self.rho).real)

    @classmethod
    def pure(cls, psi: np.ndarray, t: float = 0.0) -> "DensityMatrix":
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()), t=t, require_positive=True)


def _omega_matrix(energies: np.ndarray, hbar: float) -> np.ndarray:
    e = np.asarray(energies, dtype=float)
    return (e[:, None] - e[None, :]) / hbar


def liouville_step(
    history: Sequence[DensityMatrix] | DensityMatrix,
    h: np.ndarray,
    scheme: Scheme,
    tau: float,
    hbar: float = HBAR_EV_S,
) -> DensityMatrix:
    """One chronon step of the density matrix under the scheme's dynamic law.

    retarded: Delta_R rho = [H, rho]/(i hbar) - (tau/hbar^2) H rho H, solved
    implicitly; per energy-basis element this divides by
    1 + i tau omega_nm + tau^2 E_n E_m / hbar^2, consistent with the full
    evolution map.  advanced is the explicit mirror.  symmetric is the
    central-difference commutator law and needs two history points.
    """
    scheme = Scheme(scheme)
    if isinstance(history, DensityMatrix):
        history = [history]
    if scheme is Scheme.SYMMETRIC and len(history) < 2:
        raise PreconditionError("symmetric Liouville step needs 2 history points")
    if len(history) < 1:
        raise PreconditionError("Liouville step needs at least one state")
    basis = EigenBasis.from_operator(h)
    x = basis.eigenvalues * tau / hbar
    omega = _omega_matrix(basis.eigenvalues, hbar)
    last = history[-1]
    r_last = basis.eigenvectors.conj().T @ last.rho @ basis.eigenvectors
    if scheme is Scheme.RETARDED:
        denom = 1.0 + 1j * tau * omega + np.outer(x, x)
        r_new = r_last / denom
    elif scheme is Scheme.ADVANCED:
        r_new = r_last * (1.0 - 1j * tau * omega + np.outer(x, x))
    else:
        prev = history[-2]
        r_prev = basis.eigenvectors.conj().T @ prev.rho @ basis.eigenvectors
        r_new = r_prev - 2j * tau * omega * r_last
    rho_new = basis.eigenvectors @ r_new @ basis.eigenvectors.conj().T
    return DensityMatrix(rho_new, t=last.t + tau)


def coarse_grained_evolve(
    rho0: DensityMatrix,
    h: np.ndarray,
    tau: float,
    k_steps: int,
    hbar: float = HBAR_EV_S,
) -> DensityMatrix:
    """Apply the semigroup map V_CG = (1 + i tau L)^(-k).

    In the energy basis: rho_rs(k tau) = rho_rs(0) / (1 + i omega_rs tau)^k.
    Diagonals are preserved exactly; off-diagonal moduli decay at gamma_rs.
    """
    if k_steps < 0:
        raise DomainError("step count must be non-negative")
    basis = EigenBasis.from_operator(h)
    omega = _omega_matrix(basis.eigenvalues, hbar)
    r = basis.eigenvectors.conj().T @ rho0.rho @ basis.eigenvectors
    r = r * (1.0 + 1j * omega * tau) ** (-float(k_steps))
    rho_new = basis.eigenvectors @ r @ basis.eigenvectors.conj().T
    return DensityMatrix(rho_new, t=rho0.t + k_steps * tau)


@dataclass(frozen=True)
class DecayLaw:
    """Per-element damping and phase rates of the coarse-grained map."""

    gamma_rs: float   # 1/s, >= 0
    nu_rs: float      # rad/s, odd under r <-> s
    omega_rs: float   # rad/s


def decoherence_law(
    e_r: float, e_s: float, tau: float, hbar: float = HBAR_EV_S
) -> DecayLaw:
    """Exact damping gamma = (1/2 tau) log(1 + omega^2 tau^2) and phase
    nu = (1/tau) atan(omega tau) of the (r, s) element.

    To first order in tau the element decays as exp(-omega^2 tau t / 2).
    """
    omega = (e_r - e_s) / hbar
    return DecayLaw(
        gamma_rs=math.log1p((omega * tau) ** 2) / (2.0 * tau),
        nu_rs=math.atan(omega * tau) / tau,
        omega_rs=omega,
    )


def first_order_decay_factor(omega: float, tau: float, t: float) -> float:
    """Small-(omega tau) decoherence factor exp(-omega^2 tau t / 2)."""
    return math.exp(-(omega**2) * tau * t / 2.0)


def tau_bound(h: np.ndarray, rho: DensityMatrix, hbar: float = HBAR_EV_S) -> float:
    """Shortest describable interval tau_E = hbar / (2 dE) under ``rho``.

    dE is the energy spread sqrt(<H^2> - <H>^2); an eigenstate has dE = 0
    and the bound is infinite.
    """
    h = ensure_hermitian(h)
    mean = float(np.trace(rho.rho @ h).real)
    mean_sq = float(np.trace(rho.rho @ h @ h).real)
    var = mean_sq - mean * mean
    if var <= 0.0:
        return math.inf
    return hbar / (2.0 * math.sqrt(var))


@dataclass(frozen=True)
class CompatibilityReport:
    """How the three retarded density-matrix evolutions relate after k steps.

    ``full_vs_conjugation`` should vanish identically: the full map V equals
    U rho U† with the retarded Schrodinger operator.  ``cg_ratio_residual``
    measures how well the V_CG/V element ratio matches its closed form
    [1 + x_n x_m / (1 + i(x_n - x_m))]^k, which is 1 only when E_n E_m = 0.
    """

    k_steps: int
    full_vs_conjugation: float
    cg_vs_full_max_ratio_error: float
    cg_ratio_residual: float
    mixed_term_scale: float


def compatibility_check(
    h: np.ndarray,
    tau: float,
    t: float,
    rho0: DensityMatrix | None = None,
    hbar: float = HBAR_EV_S,
) -> CompatibilityReport:
    """Verify V(t) rho0 = U(t) rho0 U†(t) and quantify the V_CG mismatch."""
    basis = EigenBasis.from_operator(h)
    k = t / tau
    if abs(k - round(k)) > 1e-9 * max(1.0, abs(k)):
        raise DomainError("t must be a lattice multiple of tau")
    k = int(round(k))
    dim = basis.dim
    if rho0 is None:
        rng = np.random.default_rng(7)
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        raw = m @ m.conj().T
        rho0 = DensityMatrix(raw / np.trace(raw).real, require_positive=True)
    x = basis.eigenvalues * tau / hbar
    omega = _omega_matrix(basis.eigenvalues, hbar)
    r0 = basis.eigenvectors.conj().T @ rho0.rho @ basis.eigenvectors

    full = r0 * (1.0 + 1j * tau * omega + np.outer(x, x)) ** (-float(k))
    u_fac = (1.0 + 1j * x) ** (-float(k))
    conj = np.outer(u_fac, u_fac.conj()) * r0
    cg = r0 * (1.0 + 1j * tau * omega) ** (-float(k))

    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(full != 0.0, cg / full, 1.0)
        closed_ratio = (1.0 + np.outer(x, x) / (1.0 + 1j * tau * omega)) ** float(k)
    return CompatibilityReport(
        k_steps=k,
        full_vs_conjugation=float(np.max(np.abs(full - conj))),
        cg_vs_full_max_ratio_error=float(np.max(np.abs(ratio - 1.0))),
        cg_ratio_residual=float(np.max(np.abs(ratio - closed_ratio))),
        mixed_term_scale=float(np.max(np.abs(np.outer(x, x)))),
    )


@dataclass(frozen=True)
class MeasurementSetup:
    """Object + apparatus ingredients of the state-reduction demonstration.

    The composite Hamiltonian is diagonal in the correlated basis
    |r, n> with energies eps_r + coupling * alpha_r * w_n: outcome r of the
    measured observable drags the pointer eigenvalue alpha_r, and the
    apparatus internal label n carries a classical ignorance weight C_n.
    """

    amplitudes: np.ndarray          # c_r over object outcomes, sum |c|^2 = 1
    pointer_values: np.ndarray      # alpha_r
    object_energies: np.ndarray     # eps_r (eV)
    apparatus_weights: np.ndarray   # C_n >= 0, sum = 1
    apparatus_levels: np.ndarray = field(default_factory=lambda: np.array([1.0]))
    coupling: float = 1.0           # correlation strength (eV per alpha*w)

    def __post_init__(self):
        c = np.asarray(self.amplitudes, dtype=complex)
        w = np.asarray(self.apparatus_weights, dtype=float)
        if not math.isclose(float(np.sum(np.abs(c) ** 2)), 1.0, rel_tol=1e-9):
            raise DomainError("object amplitudes must have unit norm")
        if np.any(w < 0.0) or not math.isclose(float(w.sum()), 1.0, rel_tol=1e-9):
            raise DomainError("apparatus weights must be a probability vector")
        object.__setattr__(self, "amplitudes", c)
        object.__setattr__(self, "apparatus_weights", w)
        object.__setattr__(self, "pointer_values", np.asarray(self.pointer_values, dtype=float))
        object.__setattr__(self, "object_energies", np.asarray(self.object_energies, dtype=float))
        object.__setattr__(self, "apparatus_levels", np.asarray(self.apparatus_levels, dtype=float))

    @property
    def dim(self) -> int:
        return len(self.amplitudes) * len(self.apparatus_weights)

    def composite_energies(self) -> np.ndarray:
        """Energies E_{r n} on the correlated product basis, outcome-major."""
        return (
            self.object_energies[:, None]
            + self.coupling * self.pointer_values[:, None] * self.apparatus_levels[None, :]
        ).ravel()

    def initial_density(self) -> DensityMatrix:
        """rho_i = sum_n C_n |Psi_n><Psi_n| on the correlated basis."""
        n_r = len(self.amplitudes)
        n_a = len(self.apparatus_weights)
        dim = n_r * n_a
        rho = np.zeros((dim, dim), dtype=complex)
        for idx_n, weight in enumerate(self.apparatus_weights):
            psi = np.zeros(dim, dtype=complex)
            for idx_r, amp in enumerate(self.amplitudes):
                psi[idx_r * n_a + idx_n] = amp
            rho += weight * np.outer(psi, psi.conj())
        return DensityMatrix(rho, require_positive=True)


@dataclass(frozen=True)
class MeasurementTrajectory:
    """Decoherence record of a measurement demonstration."""

    times: np.ndarray
    off_diagonal_norms: np.ndarray   # Frobenius norm of outcome-coherence blocks
    states: list[DensityMatrix]
    asymptotic_diagonal: np.ndarray  # the late-time diagonal mixture


def measurement_demo(
    setup: MeasurementSetup,
    tau: float,
    t_final: float,
    scheme: Scheme = Scheme.RETARDED,
    max_dim: int = 64,
    n_records: int = 200,
    hbar: float = HBAR_EV_S,
) -> MeasurementTrajectory:
    """Evolve the composite state and watch outcome coherences die.

    Under the coarse-grained (retarded) map the off-diagonal blocks decay
    toward the diagonal mixture sum_n rho_nn(0) |n><n|; under the symmetric
    scheme their moduli stay constant, so no reduction happens.  The closed
    per-element forms jump directly to each recorded lattice instant, so a
    physically long run (billions of chronons) stays cheap; at most
    ``n_records`` states are kept.
    """
    if setup.dim > max_dim:
        raise PreconditionError(
            f"composite dimension {setup.dim} exceeds the configured maximum {max_dim}"
        )
    scheme = Scheme(scheme)
    energies = setup.composite_energies()
    rho0 = setup.initial_density()
    n_steps = int(round(t_final / tau))
    n_a = len(setup.apparatus_weights)
    record_ks = np.unique(np.linspace(0, n_steps, min(n_records, n_steps + 1)).astype(int))

    def offdiag_norm(dm: DensityMatrix) -> float:
        blocks = dm.rho.copy()
        for r in range(len(setup.amplitudes)):
            sl = slice(r * n_a, (r + 1) * n_a)
            blocks[sl, sl] = 0.0
        return float(np.linalg.norm(blocks))

    omega = _omega_matrix(energies, hbar)
    if scheme is Scheme.SYMMETRIC:
        angles = np.asarray(arcsin_branch(tau * omega))
        element_factor = lambda k: np.exp(-1j * float(k) * angles)
    else:
        element_factor = lambda k: (1.0 + 1j * omega * tau) ** (-float(k))

    states = []
    norms = []
    for k in record_ks:
        dm = DensityMatrix(rho0.rho * element_factor(k), t=k * tau)
        states.append(dm)
        norms.append(offdiag_norm(dm))
    return MeasurementTrajectory(
        times=record_ks * tau,
        off_diagonal_norms=np.asarray(norms),
        states=states,
        asymptotic_diagonal=np.real(np.diag(rho0.rho)).copy(),
    )
