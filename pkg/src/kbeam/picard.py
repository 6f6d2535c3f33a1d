"""Picard iteration for the beam integral equation.

Each sweep freezes the nonlocal coefficient at tau_k = m(integral of u_k'^2),
applies the Green's kernel with that coefficient to the load evaluated at
the current iterate, and repeats.  Trajectories are deterministic: identical
configuration gives bitwise-identical iterates.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .analysis import AssumptionReport
from .grid import (
    DiscreteFunction,
    Grid,
    derivative_values,
    discrete_derivative,
    seminorm,
    trapezoid_values,
)
from .kernel import KernelParams, greens_dx_matrix, greens_matrix
from .problem import BeamProblem, StiffnessFunction

KERNEL_ANALYTIC = "kernel-analytic"
FINITE_DIFFERENCE = "finite-difference"
DERIVATIVE_MODES = (KERNEL_ANALYTIC, FINITE_DIFFERENCE)


class NonFiniteLoadError(RuntimeError):
    """Load evaluation produced a non-finite value at a quadrature node."""


class NonContractionWarning(UserWarning):
    """Successive-iterate energy norms grew for several consecutive sweeps."""


class InitialEnergyWarning(UserWarning):
    """Initial iterate exceeds the certified energy bound c1."""


@dataclass(frozen=True)
class SolverConfig:
    """Grid size, sweep budget, stopping tolerance and derivative strategy.

    ``tol`` stops the iteration once the energy norm of the update drops to
    or below it; 0 disables early stopping.  ``derivative_mode`` selects how
    the iterate's slope is produced: ``kernel-analytic`` integrates the
    differentiated kernel against the load (default; avoids compounding
    difference error through sweeps), ``finite-difference`` differences the
    new iterate on the grid.
    """

    n: int
    max_iter: int
    tol: float = 0.0
    derivative_mode: str = KERNEL_ANALYTIC

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"solver needs n >= 2, got {self.n}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"solver needs max_iter >= 1, got {self.max_iter}")
        if self.tol < 0.0:
            raise ValueError(f"tolerance must be nonnegative, got {self.tol}")
        if self.derivative_mode not in DERIVATIVE_MODES:
            raise ValueError(
                f"derivative_mode must be one of {DERIVATIVE_MODES}, "
                f"got {self.derivative_mode!r}"
            )


@dataclass(frozen=True)
class IterationState:
    """Iterate number k, nodal values of u_k and u_k', and tau_k.

    ``h1_diff`` is the energy norm of the last update (None for k = 0).
    """

    k: int
    u: DiscreteFunction
    du: DiscreteFunction
    tau: float
    h1_diff: Optional[float] = None


def tau_of(du: DiscreteFunction, stiffness: StiffnessFunction) -> float:
    """Frozen nonlocal coefficient m(trapezoid of du^2)."""
    z = trapezoid_values(du.values * du.values, du.grid.h)
    return float(stiffness.evaluate(z))


def initial_state(
    problem: BeamProblem,
    config: SolverConfig,
    u0: Optional[DiscreteFunction] = None,
    report: Optional[AssumptionReport] = None,
) -> IterationState:
    """Build the k = 0 state; the default start is the zero function.

    When an assumption report is supplied and the start exceeds its c1
    bound, a non-fatal :class:`InitialEnergyWarning` is emitted (the
    certification assumes starts inside that ball).
    """
    grid = Grid(config.n, problem.length_l)
    if u0 is None:
        u0 = DiscreteFunction.zeros(grid)
    else:
        if u0.grid != grid:
            raise ValueError(
                f"u0 lives on grid (n={u0.grid.n}, l={u0.grid.l}), "
                f"expected (n={grid.n}, l={grid.l})"
            )
        scale = max(1.0, float(np.abs(u0.values).max()))
        if abs(u0.values[0]) > 1e-12 * scale or abs(u0.values[-1]) > 1e-12 * scale:
            raise ValueError("u0 must vanish at both boundary nodes")
    du0 = discrete_derivative(u0)
    tau0 = tau_of(du0, problem.stiffness)
    if report is not None and report.c1 is not None:
        u0_h1 = seminorm(u0, 1)
        if u0_h1 > report.c1:
            warnings.warn(
                f"initial iterate energy norm {u0_h1:g} exceeds c1={report.c1:g}; "
                "the convergence certificate does not cover this start",
                InitialEnergyWarning,
                stacklevel=2,
            )
    return IterationState(k=0, u=u0, du=du0, tau=tau0, h1_diff=None)


def picard_step(
    state: IterationState, problem: BeamProblem, config: SolverConfig
) -> IterationState:
    """One sweep: load from the current iterate, kernel application, new tau."""
    grid = state.u.grid
    x = grid.nodes
    load = problem.force(x, state.u.values, state.du.values)
    bad = ~np.isfinite(load)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NonFiniteLoadError(
            f"load evaluation is not finite at node i={i}, x={x[i]:.6g} "
            f"(value {load[i]})"
        )
    weighted = grid.quad_weights() * load
    params = KernelParams(a=state.tau, l=problem.length_l)
    u_new = greens_matrix(x, params) @ weighted
    if config.derivative_mode == KERNEL_ANALYTIC:
        du_new = greens_dx_matrix(x, params) @ weighted
    else:
        du_new = derivative_values(u_new, grid.h)
    u_fn = DiscreteFunction(grid, u_new)
    du_fn = DiscreteFunction(grid, du_new)
    h1 = seminorm(DiscreteFunction(grid, u_new - state.u.values), 1)
    return IterationState(
        k=state.k + 1,
        u=u_fn,
        du=du_fn,
        tau=tau_of(du_fn, problem.stiffness),
        h1_diff=h1,
    )


def solve(
    problem: BeamProblem,
    config: SolverConfig,
    u0: Optional[DiscreteFunction] = None,
    report: Optional[AssumptionReport] = None,
) -> list[IterationState]:
    """Run the iteration and return the full trajectory, initial state included.

    Stops at ``max_iter`` sweeps or when the update's energy norm reaches
    ``tol`` (if positive).  Three consecutive growing updates raise a
    :class:`NonContractionWarning`, a warning rather than a failure, because the
    contraction hypothesis may simply not hold for the problem at hand.
    """
    state = initial_state(problem, config, u0=u0, report=report)
    trajectory = [state]
    growing = 0
    warned = False
    for _ in range(config.max_iter):
        prev = state
        state = picard_step(state, problem, config)
        trajectory.append(state)
        if prev.h1_diff is not None and state.h1_diff > prev.h1_diff:
            growing += 1
            if growing >= 3 and not warned:
                warnings.warn(
                    f"update norm grew for {growing} consecutive sweeps "
                    f"(latest {state.h1_diff:g}); the iteration may not contract",
                    NonContractionWarning,
                    stacklevel=2,
                )
                warned = True
        else:
            growing = 0
        if config.tol > 0.0 and state.h1_diff <= config.tol:
            break
    return trajectory
