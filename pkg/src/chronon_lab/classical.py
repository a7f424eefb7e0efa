"""Finite-difference dynamics of the classical chronon electron.

The velocity jumps between discrete proper-time samples n*tau0 under the
retarded, advanced or symmetric difference law; a companion transmission
law fixes the stored positions from velocity differences (retarded) or
velocities (advanced/symmetric).  Because the retarded transmission law is
a statement about the internal, microscopic displacement, every history
also carries a macroscopic trapezoid position for field evaluation and
plotting; see the module notes in the README.

Everything here works in any coherent Gaussian-style unit system: pass
mass, charge, c and tau0 explicitly.  Four-vectors use the (-,+,+,+)
signature, so u.u = -c^2 on the shell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .constants import CODATA, ChrononParams, PhysicalConstants
from .errors import ConvergenceError, DomainError, PreconditionError
from .evolution import Scheme

SHELL_RTOL = 1e-9
FIXED_POINT_TOL = 1e-12
FIXED_POINT_RELAX = 0.5
FIXED_POINT_MAX_ITER = 200

METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])


def minkowski_dot(a: np.ndarray, b: np.ndarray) -> float:
    return float(-a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3])


def boost_onto_shell(u: np.ndarray, c: float) -> np.ndarray:
    """Reset the time component so u.u = -c^2 exactly, keeping the spatial part."""
    out = np.array(u, dtype=float)
    out[0] = math.sqrt(c * c + out[1] ** 2 + out[2] ** 2 + out[3] ** 2)
    return out


def four_velocity(v3: Sequence[float], c: float) -> np.ndarray:
    """Shell four-velocity (gamma c, gamma v) from a coordinate velocity."""
    v3 = np.asarray(v3, dtype=float)
    beta_sq = float(v3 @ v3) / (c * c)
    if beta_sq >= 1.0:
        raise DomainError("coordinate speed must be below c")
    gamma = 1.0 / math.sqrt(1.0 - beta_sq)
    return np.concatenate(([gamma * c], gamma * v3))


@dataclass(frozen=True)
class ChargedParticle:
    """Mass, charge, light speed and proper-time step in coherent units."""

    mass: float
    charge: float
    c: float
    tau0: float

    def __post_init__(self):
        if min(self.mass, self.c, self.tau0) <= 0.0:
            raise DomainError("mass, c and tau0 must be strictly positive")

    @classmethod
    def electron(
        cls, constants: PhysicalConstants = CODATA, chronon: ChrononParams | None = None
    ) -> "ChargedParticle":
        """Physical electron in the internal eV/m/s unit system."""
        from .constants import chronon_for

        if chronon is None:
            chronon = chronon_for(constants.m_electron_c2, constants=constants)
        return cls(
            mass=constants.m_electron_c2 / constants.c**2,
            charge=constants.e_charge,
            c=constants.c,
            tau0=chronon.tau,
        )


@dataclass(frozen=True)
class FieldTensor:
    """External electromagnetic field.

    ``evaluator`` maps (time-like argument, 4-position) to the antisymmetric
    contravariant tensor F[mu, nu]; ``nonrel_fields`` optionally maps
    (t, r3) to an (E, B) pair for the non-relativistic stepper.
    Convention: F[0, i] = E_i and F[i, j] = eps_ijk B_k, which with the
    (-,+,+,+) metric gives the Gaussian force (e/c) F^{mu nu} u_nu =
    gamma e (E + v x B / c) in the spatial slots.
    """

    evaluator: Callable[[float, np.ndarray], np.ndarray]
    nonrel_fields: Callable[[float, np.ndarray], tuple[np.ndarray, np.ndarray]] | None = None

    @staticmethod
    def assemble(e3: Sequence[float], b3: Sequence[float]) -> np.ndarray:
        e3 = np.asarray(e3, dtype=float)
        b3 = np.asarray(b3, dtype=float)
        f = np.zeros((4, 4))
        f[0, 1:] = e3
        f[1:, 0] = -e3
        f[1, 2], f[2, 1] = b3[2], -b3[2]
        f[2, 3], f[3, 2] = b3[0], -b3[0]
        f[3, 1], f[1, 3] = b3[1], -b3[1]
        return f

    @classmethod
    def uniform(cls, e3: Sequence[float], b3: Sequence[float]) -> "FieldTensor":
        f = cls.assemble(e3, b3)
        e_arr = np.asarray(e3, dtype=float)
        b_arr = np.asarray(b3, dtype=float)
        return cls(
            evaluator=lambda _t, _x: f,
            nonrel_fields=lambda _t, _r: (e_arr, b_arr),
        )

    @classmethod
    def zero(cls) -> "FieldTensor":
        return cls.uniform([0.0, 0.0, 0.0], [0.0, 0.0, 0.0])

    def force(self, particle: ChargedParticle, t: float, x: np.ndarray, u: np.ndarray) -> np.ndarray:
        """Lorentz four-force (e/c) F^{mu nu} u_nu."""
        f = self.evaluator(t, x)
        if not np.allclose(f, -f.T, atol=1e-300, rtol=1e-12):
            raise DomainError("field tensor must be antisymmetric")
        u_lower = METRIC @ u
        return (particle.charge / particle.c) * (f @ u_lower)


@dataclass
class WorldlineState:
    """Proper-time history of the electron worldline.

    ``x`` follows the scheme's transmission law verbatim (for the retarded
    scheme that is the microscopic internal displacement); ``x_macro``
    accumulates the trapezoid of the velocity samples and is the coordinate
    fields are evaluated at.
    """

    particle: ChargedParticle
    proper_times: list[float] = field(default_factory=list)
    x: list[np.ndarray] = field(default_factory=list)
    u: list[np.ndarray] = field(default_factory=list)
    x_macro: list[np.ndarray] = field(default_factory=list)

    @classmethod
    def initial(
        cls,
        particle: ChargedParticle,
        u0: np.ndarray,
        x0: np.ndarray | None = None,
        tau_start: float = 0.0,
    ) -> "WorldlineState":
        state = cls(particle=particle)
        if x0 is None:
            x0 = np.zeros(4)
        state.append(tau_start, np.asarray(x0, dtype=float), np.asarray(u0, dtype=float))
        return state

    def append(self, tau: float, x: np.ndarray, u: np.ndarray, x_macro: np.ndarray | None = None):
        c = self.particle.c
        shell = abs(minkowski_dot(u, u) + c * c) / (c * c)
        if shell > SHELL_RTOL:
            raise DomainError(f"four-velocity off the u.u = -c^2 shell by {shell:.3e}")
        if self.proper_times and not math.isclose(
            tau - self.proper_times[-1], self.particle.tau0, rel_tol=1e-9
        ):
            raise DomainError("proper-time samples must be consecutive multiples of tau0")
        self.proper_times.append(tau)
        self.x.append(np.array(x, dtype=float))
        self.u.append(np.array(u, dtype=float))
        if x_macro is None:
            x_macro = np.array(x, dtype=float)
        self.x_macro.append(np.array(x_macro, dtype=float))

    def __len__(self) -> int:
        return len(self.proper_times)

    def velocities(self) -> np.ndarray:
        return np.asarray(self.u)

    def positions(self) -> np.ndarray:
        return np.asarray(self.x)

    def macro_positions(self) -> np.ndarray:
        return np.asarray(self.x_macro)


def _solve_velocity(
    map_fn: Callable[[np.ndarray], np.ndarray], guess: np.ndarray, c: float
) -> np.ndarray:
    """Damped fixed-point iteration with shell renormalisation each sweep.

    Convergence is measured on the fixed-point defect |map(u) - u| (relative
    to the velocity scale), which bounds the equation residual directly; the
    update itself is relaxed by 0.5.
    """
    u = boost_onto_shell(guess, c)
    scale = max(np.linalg.norm(u), c)
    residual = math.inf
    for _ in range(FIXED_POINT_MAX_ITER):
        proposal = boost_onto_shell(map_fn(u), c)
        residual = float(np.linalg.norm(proposal - u)) / scale
        u = boost_onto_shell((1.0 - FIXED_POINT_RELAX) * u + FIXED_POINT_RELAX * proposal, c)
        if residual <= FIXED_POINT_TOL:
            return u
    raise ConvergenceError(
        f"velocity fixed point stalled after {FIXED_POINT_MAX_ITER} iterations",
        residual=residual,
        iterations=FIXED_POINT_MAX_ITER,
    )


def step_relativistic(
    history: WorldlineState, fields: FieldTensor, scheme: Scheme
) -> WorldlineState:
    """Append one sample to the worldline under the scheme's difference law.

    The new velocity solves the implicit finite-difference relation by a
    damped fixed-point iteration (relaxation 0.5, tolerance 1e-12, at most
    200 sweeps) renormalised onto the u.u = -c^2 shell; the new stored
    position follows the scheme's transmission law verbatim.  The symmetric
    scheme needs two history samples; bootstrap it with one retarded step.
    """
    scheme = Scheme(scheme)
    particle = history.particle
    need = 2 if scheme is Scheme.SYMMETRIC else 1
    if len(history) < need:
        raise PreconditionError(
            f"{scheme.value} relativistic step needs {need} sample(s), got {len(history)}"
        )
    c = particle.c
    tau0 = particle.tau0
    tau_last = history.proper_times[-1]
    u_last = history.u[-1]
    x_last = history.x[-1]
    x_macro_last = history.x_macro[-1]
    tau_new = tau_last + tau0
    coupling = tau0 * particle.charge / (particle.mass * particle.c)

    if scheme is Scheme.RETARDED:
        # unknown u(tau_new): m0/tau0 {u - u' + u (u.(u - u'))/c^2} = (e/c) F(tau_new) u,
        # with the field sampled at the new instant and position, so the
        # macroscopic coordinate rides along in the iteration

        def fp_map(u_trial: np.ndarray) -> np.ndarray:
            x_trial = x_macro_last + 0.5 * tau0 * (u_trial + u_last)
            f = fields.evaluator(tau_new, x_trial)
            g = u_last + coupling * (f @ (METRIC @ u_trial))
            s = -minkowski_dot(u_trial, u_last) / (c * c)
            return g / s

        u_new = _solve_velocity(fp_map, u_last, c)
        x_new = x_last + 0.5 * tau0 * (u_new - u_last)
        x_macro_new = x_macro_last + 0.5 * tau0 * (u_new + u_last)
    elif scheme is Scheme.ADVANCED:
        # unknown u(tau+tau0) enters linearly; fields evaluated at tau_last
        f = fields.evaluator(tau_last, x_macro_last)
        b = u_last + coupling * (f @ (METRIC @ u_last))

        def fp_map(u_trial: np.ndarray) -> np.ndarray:
            return b - u_last * (1.0 + minkowski_dot(u_last, u_trial) / (c * c))

        u_new = _solve_velocity(fp_map, u_last, c)
        x_new = x_last + tau0 * u_last
        x_macro_new = x_macro_last + tau0 * u_last
    else:
        u_prev = history.u[-2]
        f = fields.evaluator(tau_last, x_macro_last)
        rhs = (
            u_prev
            + u_last * (minkowski_dot(u_last, u_prev) / (c * c))
            + 2.0 * coupling * (f @ (METRIC @ u_last))
        )

        def fp_map(u_trial: np.ndarray) -> np.ndarray:
            return rhs - u_last * (minkowski_dot(u_last, u_trial) / (c * c))

        u_new = _solve_velocity(fp_map, u_last, c)
        x_new = history.x[-2] + 2.0 * tau0 * u_last
        x_macro_new = history.x_macro[-2] + 2.0 * tau0 * u_last
    history.append(tau_new, x_new, u_new, x_macro_new)
    return history


def run_worldline(
    particle: ChargedParticle,
    fields: FieldTensor,
    scheme: Scheme,
    u0: np.ndarray,
    n_steps: int,
    x0: np.ndarray | None = None,
) -> WorldlineState:
    """Convenience driver; symmetric runs bootstrap with one retarded step."""
    scheme = Scheme(scheme)
    state = WorldlineState.initial(particle, u0, x0)
    if scheme is Scheme.SYMMETRIC and n_steps > 0:
        step_relativistic(state, fields, Scheme.RETARDED)
    while len(state) < n_steps + 1:
        step_relativistic(state, fields, scheme)
    return state


@dataclass
class NonrelHistory:
    """Sampled (t, r, v) history of the non-relativistic stepper.

    ``r`` follows the transmission law verbatim; ``r_macro`` is the
    trapezoid coordinate the fields see.
    """

    particle: ChargedParticle
    times: list[float] = field(default_factory=list)
    r: list[np.ndarray] = field(default_factory=list)
    v: list[np.ndarray] = field(default_factory=list)
    r_macro: list[np.ndarray] = field(default_factory=list)

    @classmethod
    def initial(
        cls, particle: ChargedParticle, r0: Sequence[float], v0: Sequence[float], t0: float = 0.0
    ) -> "NonrelHistory":
        h = cls(particle=particle)
        h.times.append(t0)
        h.r.append(np.asarray(r0, dtype=float))
        h.v.append(np.asarray(v0, dtype=float))
        h.r_macro.append(np.asarray(r0, dtype=float))
        return h

    def velocities(self) -> np.ndarray:
        return np.asarray(self.v)

    def positions(self) -> np.ndarray:
        return np.asarray(self.r)

    def macro_positions(self) -> np.ndarray:
        return np.asarray(self.r_macro)


def step_nonrelativistic(history: NonrelHistory, fields: FieldTensor) -> NonrelHistory:
    """One retarded non-relativistic step.

    m0/tau0 [v(t) - v(t - tau0)] = e [E(t) + v(t) x B(t) / c] references the
    fields at the new instant (and, for position-dependent fields, at the
    new macroscopic coordinate), so the linear solve for v(t) sits inside a
    short fixed-point sweep over the field-evaluation point.  The stored
    position then follows r(t) - r(t - tau0) = (tau0/2)[v(t) - v(t - tau0)]
    as written.  Warns above 0.1 c.
    """
    if fields.nonrel_fields is None:
        raise PreconditionError("non-relativistic stepping needs nonrel_fields on the FieldTensor")
    particle = history.particle
    tau0 = particle.tau0
    t_new = history.times[-1] + tau0
    v_last = history.v[-1]
    r_macro_last = history.r_macro[-1]
    a = particle.charge * tau0 / (particle.mass * particle.c)
    v_new = np.array(v_last, dtype=float)
    scale = max(float(np.linalg.norm(v_last)), 1e-30)
    residual = math.inf
    for _ in range(FIXED_POINT_MAX_ITER):
        r_trial = r_macro_last + 0.5 * tau0 * (v_new + v_last)
        e3, b3 = fields.nonrel_fields(t_new, r_trial)
        # cross(v, B) as a matrix on v: (v x B)_i = -(B x v)_i
        v_cross_b = -np.array(
            [
                [0.0, -b3[2], b3[1]],
                [b3[2], 0.0, -b3[0]],
                [-b3[1], b3[0], 0.0],
            ]
        )
        m = np.eye(3) - a * v_cross_b
        rhs = v_last + (particle.charge * tau0 / particle.mass) * np.asarray(e3, dtype=float)
        proposal = np.linalg.solve(m, rhs)
        residual = float(np.linalg.norm(proposal - v_new)) / scale
        v_new = proposal
        if residual <= FIXED_POINT_TOL:
            break
    else:
        raise ConvergenceError(
            "non-relativistic field-point iteration stalled",
            residual=residual,
            iterations=FIXED_POINT_MAX_ITER,
        )
    speed = float(np.linalg.norm(v_new))
    if speed > 0.1 * particle.c:
        import warnings

        warnings.warn(
            f"non-relativistic stepper at |v| = {speed / particle.c:.3f} c", stacklevel=2
        )
    r_new = history.r[-1] + 0.5 * tau0 * (v_new - v_last)
    r_macro_new = history.r_macro[-1] + 0.5 * tau0 * (v_new + v_last)
    history.times.append(t_new)
    history.r.append(r_new)
    history.v.append(v_new)
    history.r_macro.append(r_macro_new)
    return history


@dataclass(frozen=True)
class EnergyBalance:
    """Per-sample decomposition of the retarded equation of motion.

    All four-vector entries are contravariant.  ``r_term`` is dissipative
    (its time component is never negative), ``s_term`` conservative.
    ``residual`` is the time-component balance of the kinetic-energy
    difference, radiated and reaction rates against the external power.
    ``schott_rate`` and ``larmor_rate`` are the first-order expansion terms
    whose difference is the net first-order radiation reaction.
    """

    proper_time: float
    dq_over_tau: np.ndarray
    r_term: np.ndarray
    s_term: np.ndarray
    p_ext: float
    t_kinetic: float
    residual: float
    schott_rate: float
    larmor_rate: float


def energy_balance(
    history: WorldlineState, fields: FieldTensor
) -> list[EnergyBalance]:
    """Decompose each interior sample of a retarded worldline.

    Needs at least three consecutive samples: the dissipative and
    conservative terms use u(tau +- tau0).
    """
    if len(history) < 3:
        raise PreconditionError("energy balance needs >= 3 consecutive samples")
    particle = history.particle
    c = particle.c
    m0 = particle.mass
    tau0 = particle.tau0
    e2 = particle.charge**2
    out = []
    for idx in range(1, len(history) - 1):
        u_m = history.u[idx - 1]
        u_0 = history.u[idx]
        u_p = history.u[idx + 1]
        tau = history.proper_times[idx]
        dq = m0 * (u_0 - u_m) / tau0
        second = u_p + u_m - 2.0 * u_0
        first = u_p - u_m
        r_term = -(m0 / (2.0 * tau0 * c * c)) * u_0 * minkowski_dot(u_0, second)
        s_term = -(m0 / (2.0 * tau0 * c * c)) * u_0 * minkowski_dot(u_0, first)
        force = fields.force(particle, tau, history.x_macro[idx], u_0)
        gamma = u_0[0] / c
        p_ext = c * force[0]  # energy per unit proper time
        t_kin = m0 * c * (u_0[0] - c)
        t_kin_prev = m0 * c * (u_m[0] - c)
        residual = (t_kin - t_kin_prev) / tau0 + c * r_term[0] + c * s_term[0] - p_ext
        # first-order expansion terms from central differences
        accel = first / (2.0 * tau0)
        accel_prev = (u_0 - u_m) / tau0
        accel_next = (u_p - u_0) / tau0
        da0 = (accel_next[0] - accel_prev[0]) / tau0
        schott = (2.0 / 3.0) * e2 / (c * c) * da0
        larmor = (2.0 / 3.0) * e2 / c**3 * gamma * minkowski_dot(accel, accel)
        out.append(
            EnergyBalance(
                proper_time=tau,
                dq_over_tau=dq,
                r_term=r_term,
                s_term=s_term,
                p_ext=p_ext,
                t_kinetic=t_kin,
                residual=residual,
                schott_rate=schott,
                larmor_rate=larmor,
            )
        )
    return out


def self_field_tensor(history: WorldlineState, idx: int) -> np.ndarray:
    """Retarded self-field (m0 / e c tau0)[u_mu(t) u_nu(t-tau0) - u_mu(t-tau0) u_nu(t)].

    Returned with contravariant indices so it can be summed with an external
    tensor: on solutions of the retarded law, (e/c)(F_self + F_ext) u = 0.
    """
    if idx < 1 or idx >= len(history):
        raise PreconditionError("self-field needs a sample with a predecessor")
    particle = history.particle
    u_now = history.u[idx]
    u_prev = history.u[idx - 1]
    # outer products of the contravariant velocities give F^{mu nu} directly
    return (particle.mass / (particle.charge * particle.c * particle.tau0)) * (
        np.outer(u_now, u_prev) - np.outer(u_prev, u_now)
    )


def internal_rotation_solution(
    chronon: ChrononParams, m0_c2: float, constants: PhysicalConstants = CODATA
) -> tuple[float, float]:
    """Internal circular motion amplitude and the anomalous magnetic moment.

    Solves m0 c^2 (gamma(beta) - 1) = m0 c^2 for the rotation amplitude,
    giving beta0^2 = 3/4 exactly, and returns the associated moment
    mu_a = e^3 / (4 pi m0 c^2) in internal Gaussian units.
    """
    if m0_c2 <= 0.0:
        raise DomainError("rest energy must be strictly positive")

    def kinetic_condition(beta: float) -> float:
        return 1.0 / math.sqrt(1.0 - beta * beta) - 2.0

    beta0 = brentq(kinetic_condition, 0.5, 0.99, xtol=1e-15)
    mu_a = constants.e_charge**3 / (4.0 * math.pi * m0_c2)
    return beta0 * beta0, mu_a
