"""Convergence constants and a priori bounds for the Picard iteration.

Stateless arithmetic on problem data.  The solver never consults these
values; they are reported so the user knows whether geometric convergence
is certified for their problem, and at what rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .problem import BeamProblem


@dataclass(frozen=True)
class AssumptionReport:
    """Computed constants and hypothesis verdicts.

    ``omega`` is the length-condition margin; ``c1`` bounds the energy norm
    of the solution, ``c0``/``c2`` the decay factor and uniform bound for
    the iterates, and ``q`` the contraction factor.  The constants other
    than ``omega`` are None when ``omega <= 0`` leaves them undefined.
    When the problem's growth data hold only on a sampled range
    (``assumptions_global`` False) the constants are formal and
    ``hypotheses_certified`` stays False.
    """

    omega: float
    c1: Optional[float]
    c0: Optional[float]
    c2: Optional[float]
    q: Optional[float]
    omega_positive: bool
    q_contractive: bool
    hypotheses_certified: bool
    notes: tuple[str, ...] = ()


def omega(problem: BeamProblem) -> float:
    """Length-condition margin: alpha + (pi/l)^2 - (l/pi)^2 s2 - (l/pi) s3.

    The sup-norm growth coefficient of the displacement enters with weight
    (l/pi)^2 and that of the slope with weight (l/pi).
    """
    l = problem.length_l
    alpha = problem.stiffness.alpha
    f = problem.force
    return (
        alpha
        + (math.pi / l) ** 2
        - (l / math.pi) ** 2 * f.sigma2_inf
        - (l / math.pi) * f.sigma3_inf
    )


def contraction_q(problem: BeamProblem) -> Optional[float]:
    """Contraction factor of the iteration map; None when omega <= 0.

    q = (l/pi)^2 (2 l1 (|sigma1|/omega)^2 + l2 + (pi/l) l3) / (alpha + (pi/l)^2)
    """
    w = omega(problem)
    if w <= 0.0:
        return None
    l = problem.length_l
    f = problem.force
    l1 = problem.stiffness.lipschitz_l1
    num = 2.0 * l1 * (f.sigma1_norm / w) ** 2 + f.l2_inf + (math.pi / l) * f.l3_inf
    return (l / math.pi) ** 2 * num / (problem.stiffness.alpha + (math.pi / l) ** 2)


def constants(problem: BeamProblem, u0_h1: float) -> AssumptionReport:
    """Full constant set for a run started from an iterate of energy norm u0_h1."""
    if u0_h1 < 0.0:
        raise ValueError("u0_h1 must be nonnegative")
    l = problem.length_l
    f = problem.force
    w = omega(problem)
    notes: list[str] = []
    if not f.assumptions_global:
        notes.append(
            "growth and Lipschitz data hold only on a sampled range; "
            "all constants are formal"
        )
    if w <= 0.0:
        notes.append("length condition violated (omega <= 0): constants undefined")
        return AssumptionReport(
            omega=w,
            c1=None,
            c0=None,
            c2=None,
            q=None,
            omega_positive=False,
            q_contractive=False,
            hypotheses_certified=False,
            notes=tuple(notes),
        )
    c1 = l * f.sigma1_norm / (w * math.pi)
    growth = (l / math.pi) ** 2 * f.sigma2_inf + (l / math.pi) * f.sigma3_inf
    if f.sigma2_inf + f.sigma3_inf == 0.0:
        c0 = 0.0
        c2 = c1
    else:
        c0 = growth / (growth + w)
        c2 = c1 + c0 * max(0.0, u0_h1 - c1)
    q = contraction_q(problem)
    certified = f.assumptions_global and u0_h1 <= c1
    if f.assumptions_global and u0_h1 > c1:
        notes.append(
            f"initial iterate energy norm {u0_h1:g} exceeds the solution bound "
            f"c1={c1:g}; convergence is not certified for this start"
        )
    return AssumptionReport(
        omega=w,
        c1=c1,
        c0=c0,
        c2=c2,
        q=q,
        omega_positive=True,
        q_contractive=q is not None and q < 1.0,
        hypotheses_certified=certified,
        notes=tuple(notes),
    )


def recursive_bound(a: float, b: float, v0: float) -> float:
    """Uniform bound for sequences with v_k <= a v_{k-1} + b, 0 <= a < 1.

    Returns b/(1-a) + a * max(0, v0 - b/(1-a)).
    """
    if not (0.0 <= a < 1.0):
        raise ValueError(f"decay factor must satisfy 0 <= a < 1, got {a}")
    if not (b > 0.0):
        raise ValueError(f"increment bound must be positive, got {b}")
    if v0 < 0.0:
        raise ValueError(f"v0 must be nonnegative, got {v0}")
    limit = b / (1.0 - a)
    return limit + a * max(0.0, v0 - limit)


def a_priori_bound(q: float, k: int, p: int, e0_h1: float, l: float) -> float:
    """Error bound (l/pi)^(1-p) q^k e0 for the k-th iterate, p in {0, 1}.

    The power q^k is accumulated by repeated multiplication so that
    successive bounds satisfy bound(k+1) = q * bound(k) exactly.
    """
    if not (0.0 <= q < 1.0):
        raise ValueError(f"bound requires 0 <= q < 1, got {q}")
    if int(k) != k or k < 1:
        raise ValueError(f"iteration index must be an integer >= 1, got {k}")
    if p not in (0, 1):
        raise ValueError(f"norm order must be 0 or 1, got {p}")
    if e0_h1 < 0.0:
        raise ValueError("initial error norm must be nonnegative")
    if not (l > 0.0):
        raise ValueError("beam length must be positive")
    bound = (l / math.pi) ** (1 - p) * e0_h1
    for _ in range(int(k)):
        bound *= q
    return bound


def format_report(report: AssumptionReport) -> str:
    """Plain-text rendering of an assumption report."""
    tag = "" if report.hypotheses_certified else " (formal)"

    def fmt(v: Optional[float]) -> str:
        return "undefined" if v is None else f"{v:.6g}"

    lines = [
        f"omega (length-condition margin): {report.omega:.6g}",
        f"c1 (solution energy bound):      {fmt(report.c1)}{tag}",
        f"c0 (iterate-bound decay):        {fmt(report.c0)}{tag}",
        f"c2 (uniform iterate bound):      {fmt(report.c2)}{tag}",
        f"q  (contraction factor):         {fmt(report.q)}{tag}",
        "verdicts: omega positive: " + ("yes" if report.omega_positive else "no")
        + "; contraction (q < 1): " + ("yes" if report.q_contractive else "no")
        + "; hypotheses certified: " + ("yes" if report.hypotheses_certified else "no"),
    ]
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)
