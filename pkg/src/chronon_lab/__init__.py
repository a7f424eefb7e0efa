"""chronon-lab: finite-difference (chronon) classical and quantum dynamics.

A desk-scale simulation library for discrete-time mechanics: the three
finite-difference replacements of the time derivative (retarded, symmetric,
advanced) applied to the Schrodinger, Heisenberg and Liouville-von Neumann
pictures, their non-unitary evolution operators and decay laws, the lepton
mass ladder, and the classical finite-difference electron worldline.
"""

from .constants import (
    CODATA,
    PAPER,
    ChrononParams,
    PhysicalConstants,
    chronon_for,
    chronon_uncertainty_limit,
    critical_energy,
)
from .density import (
    DecayLaw,
    DensityMatrix,
    MeasurementSetup,
    coarse_grained_evolve,
    compatibility_check,
    decoherence_law,
    liouville_step,
    measurement_demo,
    tau_bound,
)
from .errors import (
    ChrononLabError,
    ConvergenceError,
    DomainError,
    NumericError,
    PreconditionError,
    ResolutionError,
    StabilityError,
)
from .evolution import (
    NonHermitianSplit,
    QuantumState,
    Scheme,
    decay_and_lifetime,
    dyson_first_order,
    equivalent_hamiltonian,
    evolution_operator,
    evolve,
    heisenberg_delta,
    perturbation_solve,
    retarded_state_weight,
    schrodinger_step,
)
from .linalg import EigenBasis, arccos_branch, arcsin_branch, ensure_hermitian, matrix_function
from .spectrum import (
    SpectrumEntry,
    excitation_energy,
    ladder_factor,
    mass,
    micro_universe_radius,
    muon_mass_via_critical_energy,
    spectrum_table,
    uncertainty_bound,
)

__version__ = "0.1.0"

__all__ = [
    "CODATA",
    "PAPER",
    "ChrononLabError",
    "ChrononParams",
    "ConvergenceError",
    "DecayLaw",
    "DensityMatrix",
    "DomainError",
    "EigenBasis",
    "MeasurementSetup",
    "NonHermitianSplit",
    "NumericError",
    "PhysicalConstants",
    "PreconditionError",
    "QuantumState",
    "ResolutionError",
    "Scheme",
    "SpectrumEntry",
    "StabilityError",
    "arccos_branch",
    "arcsin_branch",
    "chronon_for",
    "chronon_uncertainty_limit",
    "coarse_grained_evolve",
    "compatibility_check",
    "critical_energy",
    "decay_and_lifetime",
    "decoherence_law",
    "dyson_first_order",
    "ensure_hermitian",
    "equivalent_hamiltonian",
    "evolution_operator",
    "evolve",
    "excitation_energy",
    "heisenberg_delta",
    "ladder_factor",
    "liouville_step",
    "mass",
    "matrix_function",
    "measurement_demo",
    "micro_universe_radius",
    "muon_mass_via_critical_energy",
    "perturbation_solve",
    "retarded_state_weight",
    "schrodinger_step",
    "spectrum_table",
    "tau_bound",
    "uncertainty_bound",
]
