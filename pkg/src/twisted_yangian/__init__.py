"""Spectral kernels, scattering phases and Bethe-equation solvers for
twisted-Yangian integrable chains with a single dynamical defect."""

__version__ = "0.1.0"

from .errors import (
    CollisionError,
    ContractError,
    ConvergenceError,
    DegenerateEquationError,
    DegeneratePairError,
    InvalidIndexError,
    PoleError,
    QuadratureError,
    RepresentationError,
    SizeError,
    TwistedYangianError,
)
from .special import (
    WeightVector,
    eval_a,
    eval_a_hat,
    eval_e,
    eval_two_pole,
    eval_two_pole_hat,
    eval_X,
    eval_Y,
    eval_Y_hat,
    perturbed_a_hat,
    phase,
    phase_derivative,
)
from .omega import OmegaFunction
from .kernels import (
    AlgebraSpec,
    HoleConfig,
    KernelMatrix,
    QuantumNumbers,
    density_corrections,
    ground_state_density,
    hole_energy,
    inverse_kernel,
    kernel_matrix,
    source_vectors,
    yangian_inverse_kernel,
)
from .pv import PVQuadrature
from .scattering import (
    Amplitude,
    DefectSpec,
    PhaseDecomposition,
    PhaseDensity,
    amplitude,
    boundary_phase,
    bulk_closed_form,
    bulk_phase,
    transmission_phase,
)
from .bae import (
    BetheState,
    bae_residual,
    density_histogram,
    ground_state_counts,
    hole_insert,
    solve,
    solve_ground_state,
    thermodynamic_density,
)
from .lattice import DefectRep, build_L_defect, build_R, build_transfer
