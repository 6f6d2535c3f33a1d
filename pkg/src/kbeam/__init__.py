"""Green's-function Picard solver for the nonlinear static Kirchhoff beam."""

from .analysis import (
    AssumptionReport,
    a_priori_bound,
    constants,
    contraction_q,
    omega,
    recursive_bound,
)
from .grid import DiscreteFunction, Grid, discrete_derivative, seminorm, trapezoid
from .kernel import KernelParams, kernel, kernel_dx, stable_sinh_ratio
from .oracle import LinearProblem, fd_linear_solve, kernel_quadrature_solve, residual, two_stage_solve
from .picard import (
    IterationState,
    NonContractionWarning,
    NonFiniteLoadError,
    SolverConfig,
    initial_state,
    picard_step,
    solve,
    tau_of,
)
from .problem import (
    BeamProblem,
    ForceFunction,
    StiffnessFunction,
    make_affine_stiffness,
    make_benchmark_problem,
)

__all__ = [
    "AssumptionReport",
    "BeamProblem",
    "DiscreteFunction",
    "ForceFunction",
    "Grid",
    "IterationState",
    "KernelParams",
    "LinearProblem",
    "NonContractionWarning",
    "NonFiniteLoadError",
    "SolverConfig",
    "StiffnessFunction",
    "a_priori_bound",
    "constants",
    "contraction_q",
    "discrete_derivative",
    "fd_linear_solve",
    "initial_state",
    "kernel",
    "kernel_dx",
    "kernel_quadrature_solve",
    "make_affine_stiffness",
    "make_benchmark_problem",
    "omega",
    "picard_step",
    "recursive_bound",
    "residual",
    "seminorm",
    "solve",
    "stable_sinh_ratio",
    "tau_of",
    "trapezoid",
    "two_stage_solve",
]

__version__ = "0.1.0"
