"""Independent brute-force solvers used for cross-validation.

Three routes to the linearized problem v'''' - a v'' = psi with hinged ends
live here and in :mod:`kbeam.kernel`:

  * :func:`fd_linear_solve`: central finite differences, pentadiagonal
    direct solve;
  * :func:`two_stage_solve`: quadrature of the second-order factor kernels
    (w'' - a w = psi, then v'' = w);
  * :func:`kernel_quadrature_solve`: trapezoid application of the closed
    form kernel.

All are second order; cross-checks compare them on matched grids and assert
convergence rates rather than absolute equality.  The module ships with the
library so users can run the same diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import solve_banded

from .grid import DiscreteFunction, Grid, derivative_values, trapezoid_values
from .kernel import KernelParams, greens_matrix, stable_sinh_ratio
from .problem import BeamProblem


@dataclass(frozen=True)
class LinearProblem:
    """Constant-coefficient problem v'''' - a v'' = psi, hinged ends."""

    a: float
    l: float
    psi: Callable

    def __post_init__(self) -> None:
        if not (self.a > 0.0):
            raise ValueError(f"coefficient must be positive, got a={self.a}")
        if not (self.l > 0.0):
            raise ValueError(f"length must be positive, got l={self.l}")


def _check_n(n: int) -> None:
    if int(n) != n or n < 4:
        raise ValueError(f"oracle solvers need n >= 4, got {n}")


def fd_linear_solve(lp: LinearProblem, n: int) -> DiscreteFunction:
    """Second-order central-difference solve (pentadiagonal direct solver).

    Hinged ends are imposed by the standard ghost reduction: v = 0 at the
    boundary nodes and v'' = 0 there gives v_{-1} = -v_1, v_{n+1} = -v_{n-1}.
    """
    _check_n(n)
    grid = Grid(n, lp.l)
    h = grid.h
    m = n - 1  # interior unknowns
    c4 = 1.0 / h**4
    c2 = lp.a / h**2
    main = 6.0 * c4 + 2.0 * c2
    off1 = -4.0 * c4 - c2
    off2 = c4
    ab = np.zeros((5, m))
    ab[0, 2:] = off2
    ab[1, 1:] = off1
    ab[2, :] = main
    ab[3, :-1] = off1
    ab[4, :-2] = off2
    # ghost reduction folds the out-of-range stencil entry back with a sign flip
    ab[2, 0] -= c4
    ab[2, -1] -= c4
    rhs = np.asarray(lp.psi(grid.nodes[1:-1]), dtype=float)
    rhs = np.broadcast_to(rhs, (m,)).copy()
    values = np.zeros(n + 1)
    values[1:-1] = solve_banded((2, 2), ab, rhs)
    return DiscreteFunction(grid, values)


def kernel_quadrature_solve(lp: LinearProblem, n: int) -> DiscreteFunction:
    """Trapezoid application of the closed-form kernel to psi."""
    _check_n(n)
    grid = Grid(n, lp.l)
    load = np.broadcast_to(
        np.asarray(lp.psi(grid.nodes), dtype=float), (n + 1,)
    ).copy()
    params = KernelParams(a=lp.a, l=lp.l)
    values = greens_matrix(grid.nodes, params) @ (grid.quad_weights() * load)
    return DiscreteFunction(grid, values)


def two_stage_solve(lp: LinearProblem, n: int) -> DiscreteFunction:
    """Quadrature through the two second-order factors.

    First w with w'' - a w = psi and w(0) = w(l) = 0 via the sinh-product
    kernel, then v with v'' = w and v(0) = v(l) = 0 via the polynomial
    kernel; an independent path to the same solution as the closed form.
    """
    _check_n(n)
    grid = Grid(n, lp.l)
    x = grid.nodes
    wq = grid.quad_weights()
    load = np.broadcast_to(np.asarray(lp.psi(x), dtype=float), (n + 1,)).copy()
    r = np.sqrt(lp.a)
    s = r * lp.l
    lo = np.minimum(x[:, None], x[None, :])
    hi = np.maximum(x[:, None], x[None, :])
    w_kernel = -stable_sinh_ratio(r * lo, r * (lp.l - hi), s) / r
    w = w_kernel @ (wq * load)
    v_kernel = (hi - lp.l) * lo / lp.l
    values = v_kernel @ (wq * w)
    return DiscreteFunction(grid, values)


def residual(problem: BeamProblem, u: DiscreteFunction) -> float:
    """Max-norm residual of the full nonlinear equation at interior nodes.

    Uses five-point and three-point central stencils for the fourth and
    second derivatives, so the two nodes next to each boundary are skipped.
    """
    n = u.grid.n
    if n < 4:
        raise ValueError(f"residual needs n >= 4, got {n}")
    h = u.grid.h
    v = u.values
    x = u.grid.nodes
    d4 = (v[:-4] - 4.0 * v[1:-3] + 6.0 * v[2:-2] - 4.0 * v[3:-1] + v[4:]) / h**4
    d2 = (v[:-2] - 2.0 * v[1:-1] + v[2:]) / h**2
    du = derivative_values(v, h)
    tau = float(problem.stiffness.evaluate(trapezoid_values(du * du, h)))
    inner = slice(2, n - 1)
    load = problem.force(x[inner], v[inner], du[inner])
    res = d4 - tau * d2[1:-1] - load
    return float(np.abs(res).max())
