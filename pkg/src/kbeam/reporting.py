"""Run configuration, CSV emission, error tables and plot-script generation.

Config files use a flat key = value schema with sections:

    [problem]
    type = paper-test            ; built-in benchmark, or "custom"
    ; the remaining problem keys apply to type = custom
    length = 1.0
    m0 = 1.0                     ; stiffness m(z) = m0 + m1 z
    m1 = 0.0
    force = 796.5 - 1566*u       ; expression over x, u, v (see kbeam.expr)
    sigma1_norm = 0.0
    sigma2_inf = 0.0
    sigma3_inf = 0.0
    l2_inf = 0.0
    l3_inf = 0.0
    assumptions_global = false

    [solver]
    n = 10
    max_iter = 9
    tol = 0.0
    derivative_mode = kernel-analytic

    [output]
    csv = solution.csv
    plot = plot_solution.py

Everything is deterministic; CSV files carry full decimal precision so that
parsing them reproduces the in-memory values exactly.
"""

from __future__ import annotations

import configparser
import csv
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .expr import ExpressionError, parse_force_expression
from .picard import KERNEL_ANALYTIC, IterationState, SolverConfig
from .problem import BeamProblem, ForceFunction, make_affine_stiffness, make_benchmark_problem

BUILTIN_PROBLEM = "paper-test"
DEFAULT_TABLE_KS = (1, 2, 3, 4, 5, 7, 9)
TABLE_NS = (10, 20)


class ConfigError(Exception):
    """Invalid run configuration (bad file, key, or value)."""


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run description; mirrors the config file schema."""

    problem: str = BUILTIN_PROBLEM
    length: float = 1.0
    m0: float = 1.0
    m1: float = 0.0
    force: Optional[str] = None
    sigma1_norm: float = 0.0
    sigma2_inf: float = 0.0
    sigma3_inf: float = 0.0
    l2_inf: float = 0.0
    l3_inf: float = 0.0
    assumptions_global: bool = False
    n: int = 10
    max_iter: int = 9
    tol: float = 0.0
    derivative_mode: str = KERNEL_ANALYTIC
    csv_path: Optional[str] = None
    plot_path: Optional[str] = None


_PROBLEM_KEYS = {
    "type": str,
    "length": float,
    "m0": float,
    "m1": float,
    "force": str,
    "sigma1_norm": float,
    "sigma2_inf": float,
    "sigma3_inf": float,
    "l2_inf": float,
    "l3_inf": float,
    "assumptions_global": bool,
}
_SOLVER_KEYS = {"n": int, "max_iter": int, "tol": float, "derivative_mode": str}
_OUTPUT_KEYS = {"csv": str, "plot": str}


def _convert(section: str, key: str, raw: str, kind):
    try:
        if kind is bool:
            lowered = raw.strip().lower()
            if lowered in ("true", "yes", "on", "1"):
                return True
            if lowered in ("false", "no", "off", "0"):
                return False
            raise ValueError(raw)
        return kind(raw)
    except ValueError:
        raise ConfigError(
            f"[{section}] {key}: cannot interpret {raw!r} as {kind.__name__}"
        ) from None


def load_run_config(path: str) -> RunConfig:
    """Parse a config file; unknown sections or keys are errors."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    with open(path, "r", encoding="utf-8") as handle:
        try:
            parser.read_file(handle)
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    fields: dict = {}
    for section, schema in (
        ("problem", _PROBLEM_KEYS),
        ("solver", _SOLVER_KEYS),
        ("output", _OUTPUT_KEYS),
    ):
        if not parser.has_section(section):
            continue
        for key, raw in parser.items(section):
            if key not in schema:
                raise ConfigError(f"[{section}] unknown key {key!r}")
            value = _convert(section, key, raw, schema[key])
            if section == "problem" and key == "type":
                fields["problem"] = value
            elif section == "output":
                fields[{"csv": "csv_path", "plot": "plot_path"}[key]] = value
            else:
                fields[key] = value
    unknown = set(parser.sections()) - {"problem", "solver", "output"}
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(sorted(unknown))}")
    return replace(RunConfig(), **fields)


def build_problem(config: RunConfig) -> BeamProblem:
    """Materialize the configured problem."""
    if config.problem == BUILTIN_PROBLEM:
        return make_benchmark_problem()
    if config.problem != "custom":
        raise ConfigError(
            f"[problem] type must be {BUILTIN_PROBLEM!r} or 'custom', "
            f"got {config.problem!r}"
        )
    if not config.force:
        raise ConfigError("[problem] force expression is required for custom problems")
    try:
        evaluator = parse_force_expression(config.force)
    except ExpressionError as exc:
        raise ConfigError(f"[problem] force: {exc}") from exc
    try:
        return BeamProblem(
            length_l=config.length,
            stiffness=make_affine_stiffness(config.m0, config.m1),
            force=ForceFunction(
                evaluate=evaluator,
                sigma1_norm=config.sigma1_norm,
                sigma2_inf=config.sigma2_inf,
                sigma3_inf=config.sigma3_inf,
                l2_inf=config.l2_inf,
                l3_inf=config.l3_inf,
                assumptions_global=config.assumptions_global,
            ),
        )
    except ValueError as exc:
        raise ConfigError(f"[problem] {exc}") from exc


def build_solver_config(config: RunConfig) -> SolverConfig:
    try:
        return SolverConfig(
            n=config.n,
            max_iter=config.max_iter,
            tol=config.tol,
            derivative_mode=config.derivative_mode,
        )
    except ValueError as exc:
        raise ConfigError(f"[solver] {exc}") from exc


def write_trajectory_csv(
    path: str, trajectory: list[IterationState], problem: BeamProblem
) -> None:
    """One row per (iterate, node), full decimal precision."""
    exact = problem.exact[0] if problem.exact is not None else None
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        header = ["k", "x", "u"] + (["u_exact"] if exact is not None else [])
        writer.writerow(header)
        for state in trajectory:
            nodes = state.u.grid.nodes
            exact_vals = exact(nodes) if exact is not None else None
            for i, x in enumerate(nodes):
                row = [state.k, repr(float(x)), repr(float(state.u.values[i]))]
                if exact_vals is not None:
                    row.append(repr(float(exact_vals[i])))
                writer.writerow(row)


def read_trajectory_csv(path: str) -> tuple[list[str], list[tuple[float, ...]]]:
    """Inverse of :func:`write_trajectory_csv` (header, float rows)."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        rows = [tuple(float(cell) for cell in row) for row in reader]
    return header, rows


_PLOT_TEMPLATE = '''\
#!/usr/bin/env python3
"""Plot the exact solution (if present) against the solver iterates.

Generated file; reads {csv_name} and needs matplotlib.
"""
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

groups = defaultdict(lambda: ([], []))
exact = ([], [])
with open({csv_path!r}, newline="") as handle:
    reader = csv.DictReader(handle)
    for row in reader:
        k = int(float(row["k"]))
        groups[k][0].append(float(row["x"]))
        groups[k][1].append(float(row["u"]))
        if "u_exact" in row and k == 0:
            exact[0].append(float(row["x"]))
            exact[1].append(float(row["u_exact"]))

fig, ax = plt.subplots(figsize=(8, 5))
if exact[0]:
    ax.plot(exact[0], exact[1], "k-", linewidth=2, label="exact")
for k in sorted(groups):
    xs, us = groups[k]
    ax.plot(xs, us, marker=".", linewidth=1, label=f"iterate {{k}}")
ax.set_xlabel("x")
ax.set_ylabel("u")
ax.legend(fontsize="small")
ax.grid(True, alpha=0.3)
fig.tight_layout()
fig.savefig({png_path!r}, dpi=150)
print("wrote", {png_path!r})
'''


def generate_plot_script(csv_path: str, script_path: str) -> None:
    """Emit a standalone matplotlib script that renders the trajectory CSV."""
    png_path = script_path.rsplit(".", 1)[0] + ".png"
    text = _PLOT_TEMPLATE.format(
        csv_name=csv_path, csv_path=csv_path, png_path=png_path
    )
    with open(script_path, "w", encoding="utf-8") as handle:
        handle.write(text)


def iteration_differences(trajectory: list[IterationState]) -> list[float]:
    """Max nodal magnitude of each update: entry k-1 is max |u_k - u_{k-1}|."""
    return [
        float(np.abs(after.u.values - before.u.values).max())
        for before, after in zip(trajectory, trajectory[1:])
    ]


def errors_vs_exact(
    trajectory: list[IterationState], problem: BeamProblem
) -> list[float]:
    """Max nodal deviation of each iterate (k >= 1) from the exact solution."""
    if problem.exact is None:
        raise ValueError("problem has no exact solution to compare against")
    exact = problem.exact[0]
    return [
        float(np.abs(state.u.values - exact(state.u.grid.nodes)).max())
        for state in trajectory[1:]
    ]


@dataclass(frozen=True)
class ErrorTable:
    """Per-iteration error columns for one grid size per row.

    ``error k`` is the max nodal magnitude of the k-th update,
    max_i |u_k(x_i) - u_{k-1}(x_i)|: the per-iteration convergence measure
    of the benchmark table.  Values are aligned with ``ks``.
    """

    ks: tuple[int, ...]
    rows: dict[int, tuple[float, ...]]


def error_table(
    trajectories: dict[int, list[IterationState]],
    ks: tuple[int, ...] = DEFAULT_TABLE_KS,
) -> ErrorTable:
    rows = {}
    for n, trajectory in trajectories.items():
        diffs = iteration_differences(trajectory)
        if max(ks) > len(diffs):
            raise ValueError(
                f"trajectory for n={n} has {len(diffs)} updates, table needs k={max(ks)}"
            )
        rows[n] = tuple(diffs[k - 1] for k in ks)
    return ErrorTable(ks=tuple(ks), rows=rows)


def format_error_table(table: ErrorTable) -> str:
    header = ["n \\ error"] + [f"error {k}" for k in table.ks]
    widths = [max(10, len(h) + 2) for h in header]
    lines = ["".join(h.ljust(w) for h, w in zip(header, widths))]
    for n in sorted(table.rows):
        cells = [f"n = {n}"] + [f"{v:.5f}" for v in table.rows[n]]
        lines.append("".join(c.ljust(w) for c, w in zip(cells, widths)))
    return "\n".join(lines)


def write_error_table_csv(table: ErrorTable, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["n"] + [f"error_{k}" for k in table.ks])
        for n in sorted(table.rows):
            writer.writerow([n] + [repr(v) for v in table.rows[n]])
