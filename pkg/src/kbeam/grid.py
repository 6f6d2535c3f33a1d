"""Uniform grids, composite trapezoid quadrature, and discrete Sobolev seminorms.

All functions are pure and operate on immutable value objects; they are safe
for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform grid of ``n`` subintervals on ``[0, l]`` (``n + 1`` nodes)."""

    n: int
    l: float

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"grid needs n >= 2 subintervals, got n={self.n}")
        if not (self.l > 0.0):
            raise ValueError(f"grid length must be positive, got l={self.l}")

    @property
    def h(self) -> float:
        return self.l / self.n

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.l, self.n + 1)

    def quad_weights(self) -> np.ndarray:
        """Trapezoid weights: h at interior nodes, h/2 at the two ends."""
        w = np.full(self.n + 1, self.h)
        w[0] = w[-1] = 0.5 * self.h
        return w


@dataclass(frozen=True)
class DiscreteFunction:
    """Nodal values of a function on a uniform grid."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n + 1,):
            raise ValueError(
                f"expected {self.grid.n + 1} nodal values, got shape {values.shape}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(cls, grid: Grid, func) -> "DiscreteFunction":
        return cls(grid, np.asarray(func(grid.nodes), dtype=float))

    @classmethod
    def zeros(cls, grid: Grid) -> "DiscreteFunction":
        return cls(grid, np.zeros(grid.n + 1))


def trapezoid_values(values: np.ndarray, h: float) -> float:
    """Composite trapezoid sum h*(v0/2 + v1 + ... + v_{n-1} + vn/2)."""
    values = np.asarray(values, dtype=float)
    return float(h * (0.5 * values[0] + values[1:-1].sum() + 0.5 * values[-1]))


def trapezoid(g: DiscreteFunction) -> float:
    return trapezoid_values(g.values, g.grid.h)


def derivative_values(values: np.ndarray, h: float) -> np.ndarray:
    """Second-order difference of nodal values.

    Central differences at interior nodes, one-sided three-point stencils at
    the two boundary nodes.
    """
    values = np.asarray(values, dtype=float)
    if values.size < 3:
        raise ValueError("derivative stencil needs at least 3 nodes")
    d = np.empty_like(values)
    d[1:-1] = (values[2:] - values[:-2]) / (2.0 * h)
    d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h)
    d[-1] = (3.0 * values[-1] - 4.0 * values[-2] + values[-3]) / (2.0 * h)
    return d


def discrete_derivative(g: DiscreteFunction) -> DiscreteFunction:
    if g.grid.n < 2:
        raise ValueError("discrete derivative needs n >= 2")
    return DiscreteFunction(g.grid, derivative_values(g.values, g.grid.h))


def seminorm(g: DiscreteFunction, p: int) -> float:
    """Discrete Sobolev seminorm: L2 norm of the p-th discrete derivative.

    ``p = 0`` is the plain L2 norm; derivatives are taken by repeated
    application of :func:`discrete_derivative` and the integral by the
    trapezoid rule.
    """
    if p not in (0, 1, 2):
        raise ValueError(f"seminorm order must be 0, 1 or 2, got {p}")
    if g.grid.n < 2 * p:
        raise ValueError(f"seminorm order {p} needs n >= {2 * p}")
    v = g.values
    for _ in range(p):
        v = derivative_values(v, g.grid.h)
    return float(np.sqrt(trapezoid_values(v * v, g.grid.h)))
