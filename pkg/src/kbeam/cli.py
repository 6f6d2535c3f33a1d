"""Command-line front end.

Subcommands:
  analyze           print convergence constants and hypothesis verdicts
  solve             run the iteration, write a trajectory CSV (+ plot script)
  reproduce-table1  per-iteration error table for the built-in benchmark

Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 numerical
failure (non-finite values).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from typing import Optional

from .analysis import constants, format_report
from .expr import ExpressionError
from .picard import DERIVATIVE_MODES, NonFiniteLoadError, solve
from .reporting import (
    DEFAULT_TABLE_KS,
    TABLE_NS,
    ConfigError,
    RunConfig,
    build_problem,
    build_solver_config,
    error_table,
    errors_vs_exact,
    format_error_table,
    generate_plot_script,
    iteration_differences,
    load_run_config,
    write_error_table_csv,
    write_trajectory_csv,
)


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="PATH", help="run configuration file")
    sub.add_argument("--n", type=int, help="grid subinterval count")
    sub.add_argument("--max-iter", type=int, help="iteration sweep budget")
    sub.add_argument("--tol", type=float, help="stopping tolerance (0 disables)")
    sub.add_argument(
        "--derivative-mode",
        choices=DERIVATIVE_MODES,
        help="how iterate slopes are computed",
    )
    sub.add_argument("--csv", metavar="PATH", help="output CSV path")
    sub.add_argument("--plot", metavar="PATH", help="output plot-script path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbeam",
        description="Green's-function Picard solver for the nonlinear static "
        "Kirchhoff beam with hinged ends.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("analyze", "compute convergence constants and verdicts"),
        ("solve", "run the Picard iteration and emit the trajectory"),
        ("reproduce-table1", "error table for the built-in benchmark problem"),
    ):
        cmd = sub.add_parser(name, help=text)
        _add_common_flags(cmd)
        if name == "reproduce-table1":
            cmd.add_argument(
                "--ks",
                default=",".join(str(k) for k in DEFAULT_TABLE_KS),
                help="comma-separated iteration indices for the table columns",
            )
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_run_config(args.config) if args.config else RunConfig()
    overrides = {}
    if args.n is not None:
        overrides["n"] = args.n
    if args.max_iter is not None:
        overrides["max_iter"] = args.max_iter
    if args.tol is not None:
        overrides["tol"] = args.tol
    if args.derivative_mode is not None:
        overrides["derivative_mode"] = args.derivative_mode
    if args.csv is not None:
        overrides["csv_path"] = args.csv
    if args.plot is not None:
        overrides["plot_path"] = args.plot
    return replace(config, **overrides)


def cmd_analyze(config: RunConfig) -> int:
    problem = build_problem(config)
    report = constants(problem, u0_h1=0.0)
    print(f"problem: {config.problem}")
    print(format_report(report))
    return 0


def cmd_solve(config: RunConfig) -> int:
    problem = build_problem(config)
    solver_config = build_solver_config(config)
    trajectory = solve(problem, solver_config)
    diffs = iteration_differences(trajectory)
    exact_errors = errors_vs_exact(trajectory, problem) if problem.exact else None
    print(f"problem: {config.problem}, n={solver_config.n}, "
          f"mode={solver_config.derivative_mode}")
    print("k    tau           max update    update H1-norm"
          + ("    max error vs exact" if exact_errors else ""))
    for state in trajectory:
        line = f"{state.k:<4d} {state.tau:<13.8f}"
        if state.k == 0:
            line += " " + "-".ljust(13) + " " + "-".ljust(14)
        else:
            line += f" {diffs[state.k - 1]:<13.5e} {state.h1_diff:<14.5e}"
        if exact_errors and state.k >= 1:
            line += f"   {exact_errors[state.k - 1]:.5e}"
        print(line)
    csv_path = config.csv_path or "solution.csv"
    write_trajectory_csv(csv_path, trajectory, problem)
    print(f"trajectory written to {csv_path}")
    if config.plot_path:
        generate_plot_script(csv_path, config.plot_path)
        print(f"plot script written to {config.plot_path}")
    return 0


def cmd_reproduce_table1(config: RunConfig, ks_text: str) -> int:
    try:
        ks = tuple(int(part) for part in ks_text.split(",") if part.strip())
    except ValueError:
        raise ConfigError(f"--ks: cannot parse {ks_text!r} as integers") from None
    if not ks or any(k < 1 for k in ks):
        raise ConfigError("--ks needs positive iteration indices")
    base = RunConfig(
        derivative_mode=config.derivative_mode,
        max_iter=max(ks),
        tol=0.0,
    )
    problem = build_problem(base)
    trajectories = {}
    for n in TABLE_NS:
        solver_config = build_solver_config(replace(base, n=n))
        trajectories[n] = solve(problem, solver_config)
    table = error_table(trajectories, ks)
    print(format_error_table(table))
    csv_path = config.csv_path or "table1.csv"
    write_error_table_csv(table, csv_path)
    print(f"table written to {csv_path}")
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help (0) and usage errors; fold the latter
        # into the configuration-error code
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        config = _resolve_config(args)
        if args.command == "analyze":
            return cmd_analyze(config)
        if args.command == "solve":
            return cmd_solve(config)
        return cmd_reproduce_table1(config, args.ks)
    except (ConfigError, ExpressionError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
    except NonFiniteLoadError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
