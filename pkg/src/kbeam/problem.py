"""Beam problem model: stiffness law, load, and the data the analysis needs.

Model values are immutable after construction and their evaluators must be
pure (same inputs always give the same output) and accept numpy arrays.
Assumption checks on black-box evaluators are by sampling: universal
quantification over the reals is unverifiable, so violations are caught on
the documented grids below and reported at construction time.

Sampling grids:
  * stiffness argument z on ``Z_SAMPLES`` = {0, 0.1, ..., 10}
  * load arguments (u, v) on ``UV_SAMPLES`` x ``UV_SAMPLES`` = [-2, 2]^2,
    crossed with 21 equispaced x positions on [0, l].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

Z_SAMPLES = np.linspace(0.0, 10.0, 101)
UV_SAMPLES = np.linspace(-2.0, 2.0, 9)
_X_SAMPLE_COUNT = 21
_REL_TOL = 1e-9


@dataclass(frozen=True)
class StiffnessFunction:
    """Nonlocal stiffness coefficient m(z) with its analysis data.

    ``alpha`` is a positive lower bound for m on [0, inf) and
    ``lipschitz_l1`` a Lipschitz constant; both are sample-checked on
    ``Z_SAMPLES``.  When the law is affine, ``affine = (m0, m1)`` pins
    m(z) = m0 + m1 z with alpha = m0 and lipschitz_l1 = m1 exactly.
    """

    evaluate: Callable
    alpha: float
    lipschitz_l1: float
    affine: Optional[tuple[float, float]] = None

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0):
            raise ValueError(f"stiffness lower bound must be positive, got {self.alpha}")
        if self.lipschitz_l1 < 0.0:
            raise ValueError("stiffness Lipschitz constant must be nonnegative")
        mz = np.asarray(self.evaluate(Z_SAMPLES), dtype=float)
        tol = _REL_TOL * max(1.0, float(np.abs(mz).max()))
        if np.any(mz < self.alpha - tol):
            z_bad = Z_SAMPLES[int(np.argmin(mz))]
            raise ValueError(
                f"stiffness drops below its stated lower bound {self.alpha} "
                f"near z={z_bad:g} (sampled value {mz.min():g})"
            )
        gap = np.abs(mz[:, None] - mz[None, :])
        allowed = self.lipschitz_l1 * np.abs(Z_SAMPLES[:, None] - Z_SAMPLES[None, :])
        if np.any(gap > allowed + tol):
            raise ValueError(
                "stiffness violates its stated Lipschitz constant "
                f"{self.lipschitz_l1} on the sample grid"
            )
        if self.affine is not None:
            m0, m1 = self.affine
            if self.alpha != m0 or self.lipschitz_l1 != m1:
                raise ValueError("affine stiffness requires alpha = m0 and lipschitz_l1 = m1")
            if not np.allclose(mz, m0 + m1 * Z_SAMPLES, rtol=1e-12, atol=1e-12):
                raise ValueError("evaluator disagrees with the declared affine form")


def make_affine_stiffness(m0: float, m1: float) -> StiffnessFunction:
    """Affine stiffness law m(z) = m0 + m1 z with m0 > 0, m1 >= 0."""
    if not (m0 > 0.0):
        raise ValueError(f"affine stiffness needs m0 > 0, got {m0}")
    if m1 < 0.0:
        raise ValueError(f"affine stiffness needs m1 >= 0, got {m1}")
    return StiffnessFunction(
        evaluate=lambda z: m0 + m1 * np.asarray(z, dtype=float),
        alpha=m0,
        lipschitz_l1=m1,
        affine=(m0, m1),
    )


@dataclass(frozen=True)
class ForceFunction:
    """Load f(x, u, v) together with its growth and Lipschitz data.

    Only norms of the growth/Lipschitz coefficient functions enter the
    convergence constants, so they are stored as scalars: ``sigma1_norm``
    is an L2 norm, the others sup norms.  ``assumptions_global`` states
    whether the growth and Lipschitz inequalities hold for all (u, v); when
    False the analysis constants are formal and convergence is not
    certified.
    """

    evaluate: Callable
    sigma1_norm: float
    sigma2_inf: float
    sigma3_inf: float
    l2_inf: float
    l3_inf: float
    assumptions_global: bool = False

    def __post_init__(self) -> None:
        for name in ("sigma1_norm", "sigma2_inf", "sigma3_inf", "l2_inf", "l3_inf"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative")

    def __call__(self, x, u, v) -> np.ndarray:
        # non-finite values are diagnosed by the caller, so numpy's own
        # warnings (divide-by-zero etc.) are redundant noise here
        x = np.asarray(x, dtype=float)
        with np.errstate(all="ignore"):
            out = self.evaluate(x, u, v)
        return np.broadcast_to(np.asarray(out, dtype=float), x.shape).copy()


@dataclass(frozen=True)
class BeamProblem:
    """Hinged beam of length ``length_l`` with stiffness law and load.

    ``exact``, when present, is a pair of evaluators (u, u') of a
    manufactured solution used for error measurement; it must vanish at
    both ends.
    """

    length_l: float
    stiffness: StiffnessFunction
    force: ForceFunction
    exact: Optional[tuple[Callable, Callable]] = None

    def __post_init__(self) -> None:
        if not (self.length_l > 0.0):
            raise ValueError(f"beam length must be positive, got {self.length_l}")
        if self.exact is not None:
            u, _ = self.exact
            scale = max(1.0, float(np.abs(u(np.linspace(0.0, self.length_l, 11))).max()))
            for end in (0.0, self.length_l):
                if abs(float(u(end))) > 1e-12 * scale:
                    raise ValueError(f"exact solution must vanish at x={end}")
        if self.force.assumptions_global:
            self._check_force_samples()

    def _check_force_samples(self) -> None:
        f = self.force
        xs = np.linspace(0.0, self.length_l, _X_SAMPLE_COUNT)
        uu, vv = np.meshgrid(UV_SAMPLES, UV_SAMPLES, indexing="ij")
        uv = np.column_stack([uu.ravel(), vv.ravel()])
        vals = np.stack([f(xs, u, v) for u, v in uv], axis=1)  # (x, pair)
        tol = _REL_TOL * (1.0 + float(np.abs(vals).max()))
        sigma1_local = float(np.abs(f(xs, 0.0, 0.0)).max())
        bound = sigma1_local + f.sigma2_inf * np.abs(uv[:, 0]) + f.sigma3_inf * np.abs(uv[:, 1])
        if np.any(np.abs(vals) > bound[None, :] + tol):
            raise ValueError(
                "load violates the declared growth bound "
                "sigma1 + sigma2|u| + sigma3|v| on the sample grid"
            )
        diff = np.abs(vals[:, :, None] - vals[:, None, :])
        du = np.abs(uv[:, 0][:, None] - uv[:, 0][None, :])
        dv = np.abs(uv[:, 1][:, None] - uv[:, 1][None, :])
        allowed = f.l2_inf * du + f.l3_inf * dv
        if np.any(diff > allowed[None, :, :] + tol):
            raise ValueError(
                "load violates the declared Lipschitz bound "
                "l2|u2-u1| + l3|v2-v1| on the sample grid"
            )


def _benchmark_force(x, u, v):
    x = np.asarray(x, dtype=float)
    return (
        43.5 * v * v
        - 348.0 * x**3 * v
        - 1566.0 * u
        + 696.0 * x**6
        - 3132.0 * x**3
        + 2088.0 * x
        + 796.5
    ) / 35.0


def _benchmark_sigma1_norm() -> float:
    # L2 norm over [0, 1] of the load at u = v = 0 (a polynomial), integrated
    # exactly via polynomial arithmetic.
    p = np.polynomial.Polynomial([796.5, 2088.0, 0.0, -3132.0, 0.0, 0.0, 696.0])
    return float(np.sqrt((p**2).integ()(1.0))) / 35.0


def make_benchmark_problem() -> BeamProblem:
    """Built-in benchmark: affine stiffness 1 + z/2 on a unit beam.

    The manufactured solution is u(x) = x^4 - 2x^3 + x, and the load is the
    matching polynomial expression in (x, u, v).  Its quadratic slope term
    is not globally dominated by any linear growth bound, so
    ``assumptions_global`` is False and the analysis constants are formal;
    the sup-norm data below are taken over the sampling box |u|, |v| <= 2.
    """
    return BeamProblem(
        length_l=1.0,
        stiffness=make_affine_stiffness(1.0, 0.5),
        force=ForceFunction(
            evaluate=_benchmark_force,
            sigma1_norm=_benchmark_sigma1_norm(),
            sigma2_inf=1566.0 / 35.0,
            sigma3_inf=435.0 / 35.0,
            l2_inf=1566.0 / 35.0,
            l3_inf=522.0 / 35.0,
            assumptions_global=False,
        ),
        exact=(
            lambda x: x**4 - 2.0 * x**3 + x,
            lambda x: 4.0 * x**3 - 6.0 * x**2 + 1.0,
        ),
    )
