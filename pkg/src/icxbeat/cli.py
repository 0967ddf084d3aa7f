"""Command-line front end.

Every subcommand reads JSON from ``--input`` and writes JSON or CSV to
``--output`` (standard output by default). Exit codes: 0 success, 1 a check
that ran but failed (``oracle-check``), 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .beating import bpsd_frontier, frontier_z_min, mv_solve_with_icx, psi, reduce_benchmarks
from .envelope import SampledFunction, concave_envelope, convex_envelope
from .oracle import OracleFailure, oracle_check
from .quantile_core import DomainError, StepQuantile
from .solver import (
    DEFAULT_TOL,
    EXACT,
    GRIDDED,
    IcxProblem,
    IcxSolution,
    NumericalFailure,
    solve,
    validate_solution,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

CURVE_POINTS = 1001
FRONTIER_POINTS = 40
SUBCOMMANDS = ("solve", "frontier", "psi", "reduce", "mv-solve", "oracle-check", "envelope")


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input_path: str
    output_path: Optional[str] = None
    format: str = "json"
    grid_size: Optional[int] = None
    mode: Optional[str] = None
    tol: float = DEFAULT_TOL
    icx_tol: float = 1e-6
    n: int = 2000
    check_tol: float = 1e-3
    z: Optional[float] = None
    z_min: Optional[float] = None
    z_max: Optional[float] = None
    z_steps: int = FRONTIER_POINTS
    benchmark_path: Optional[str] = None
    concave: bool = False

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValidationError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in ("json", "csv"):
            raise ValidationError("format must be json or csv")
        for name in ("tol", "icx_tol", "check_tol"):
            val = getattr(self, name)
            if not (val > 0 and math.isfinite(val)):
                raise ValidationError(f"{name} must be positive")
        if self.grid_size is not None and self.grid_size < 1:
            raise ValidationError("grid size must be positive")
        if self.n < 50:
            raise ValidationError("--n must be at least 50")
        if self.z_steps < 1:
            raise ValidationError("--z-steps must be positive")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True) + "\n"


def csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def load_problem(cfg: RunConfig) -> IcxProblem:
    d = _load_json(cfg.input_path)
    if not isinstance(d, dict):
        raise ValidationError("problem JSON must be an object")
    d = dict(d)
    if cfg.grid_size is not None:
        d["grid_size"] = cfg.grid_size
    if cfg.mode is not None:
        d["mode"] = cfg.mode
    return IcxProblem.from_dict(d)


def load_quantile(path: str) -> StepQuantile:
    d = _load_json(path)
    if not isinstance(d, dict):
        raise ValidationError("quantile JSON must be an object")
    return StepQuantile.from_dict(d)


def payoff_curve(sol: IcxSolution, problem: IcxProblem, points: int = CURVE_POINTS) -> np.ndarray:
    """Rows ``(s, rho, x_payoff)`` at cell midpoints, coupled comonotonically."""
    s = (np.arange(points) + 0.5) / points
    rho = np.asarray(problem.sdf.quantile_leftlim(1.0 - s), dtype=float)
    x = np.asarray(sol.exact_curve(s), dtype=float)
    return np.column_stack([s, rho, x])


def _solution_output(sol: IcxSolution, problem: IcxProblem, cfg: RunConfig) -> str:
    if cfg.format == "csv":
        return csv_text(["s", "rho", "x_payoff"], payoff_curve(sol, problem))
    d = sol.to_dict()
    budget_tol = 1e-8 if problem.mode == EXACT else 1e-5
    d["violations"] = validate_solution(sol, problem, budget_tol=budget_tol, icx_tol=cfg.icx_tol)
    return _dump_json(d)


def default_z_grid(problem: IcxProblem, steps: int = FRONTIER_POINTS) -> np.ndarray:
    """From the riskless level upward by four classical-frontier SD units.

    On the classical frontier one unit of standard deviation buys
    ``sqrt(Var[rho]) / E[rho]`` of mean, which sets the scale of the span.
    """
    z0 = frontier_z_min(problem)
    sdf = problem.sdf
    span = 4.0 * math.sqrt(sdf.var_rho) / sdf.e_rho
    return np.linspace(z0, z0 + span, steps)


def _frontier(cfg: RunConfig) -> tuple[str, int]:
    problem = load_problem(cfg)
    grid = default_z_grid(problem, cfg.z_steps)
    if cfg.z_min is not None or cfg.z_max is not None:
        lo = cfg.z_min if cfg.z_min is not None else grid[0]
        hi = cfg.z_max if cfg.z_max is not None else grid[-1]
        if hi < lo:
            raise ValidationError("--z-max must not be below --z-min")
        grid = np.linspace(lo, hi, cfg.z_steps)
    pts = bpsd_frontier(problem, grid, cfg.tol)
    if cfg.format == "csv":
        return csv_text(["z", "std_dev"], [(p.z, p.std_dev) for p in pts]), EXIT_OK
    out = [{"z": p.z, "std_dev": p.std_dev, "error": p.error,
            "case_tag": p.solution.case_tag if p.solution else None} for p in pts]
    return _dump_json({"frontier": out}), EXIT_OK


def _envelope(cfg: RunConfig) -> tuple[str, int]:
    d = _load_json(cfg.input_path)
    if not isinstance(d, dict) or set(d) - {"grid", "values"}:
        raise ValidationError("envelope input must be {grid, values}")
    f = SampledFunction(d["grid"], d["values"])
    env = concave_envelope(f) if cfg.concave else convex_envelope(f)
    slope_at = env.slopes(np.minimum(f.grid, np.nextafter(1.0, 0.0)))
    rows = zip(f.grid, f.values, env.values, slope_at)
    if cfg.format == "csv":
        return csv_text(["s", "f", "envelope", "slope"], rows), EXIT_OK
    return _dump_json({"grid": f.grid.tolist(), "f": f.values.tolist(),
                       "envelope": env.values.tolist(), "slope": slope_at.tolist(),
                       "hull_indices": env.hull_indices.tolist()}), EXIT_OK


def run(cfg: RunConfig) -> tuple[str, int]:
    """Execute one subcommand; returns ``(output text, exit code)``."""
    cmd = cfg.subcommand
    if cmd == "solve":
        problem = load_problem(cfg)
        return _solution_output(solve(problem, cfg.tol), problem, cfg), EXIT_OK
    if cmd == "mv-solve":
        if cfg.z is None:
            raise ValidationError("mv-solve needs --z")
        problem = load_problem(cfg)
        return _solution_output(mv_solve_with_icx(problem, cfg.z, cfg.tol), problem, cfg), EXIT_OK
    if cmd == "frontier":
        return _frontier(cfg)
    if cmd == "psi":
        if cfg.benchmark_path is None:
            raise ValidationError("psi needs --benchmark")
        val = psi(load_quantile(cfg.input_path), load_quantile(cfg.benchmark_path))
        if cfg.format == "csv":
            return csv_text(["psi"], [(val,)]), EXIT_OK
        return _dump_json({"psi": val}), EXIT_OK
    if cmd == "reduce":
        d = _load_json(cfg.input_path)
        if isinstance(d, dict):
            if set(d) != {"benchmarks"}:
                raise ValidationError("reduce input must be a list or {benchmarks: [...]}")
            d = d["benchmarks"]
        if not isinstance(d, list):
            raise ValidationError("reduce input must be a list of quantiles")
        Q = reduce_benchmarks([StepQuantile.from_dict(q) for q in d])
        if cfg.format == "csv":
            return csv_text(["s_start", "s_end", "value"],
                        zip(Q.breakpoints[:-1], Q.breakpoints[1:], Q.values)), EXIT_OK
        return _dump_json(Q.to_dict()), EXIT_OK
    if cmd == "oracle-check":
        problem = load_problem(cfg)
        sol = solve(problem, cfg.tol)
        rep = oracle_check(sol, problem, n=cfg.n, tol=cfg.check_tol, icx_tol=cfg.icx_tol)
        code = EXIT_OK if rep.passed else EXIT_CHECK_FAILED
        return _dump_json({"case_tag": sol.case_tag, **rep.to_dict()}), code
    if cmd == "envelope":
        return _envelope(cfg)
    raise ValidationError(f"unknown subcommand {cmd!r}")  # pragma: no cover


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icxbeat", description="Variance-minimal payoffs beating a benchmark in ICX order.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, fmt_default="json"):
        p.add_argument("--input", required=True, help="input JSON file")
        p.add_argument("--output", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default=fmt_default)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--icx-tol", type=float, default=1e-6)

    def problem_opts(p):
        p.add_argument("--grid-size", type=int, default=None)
        p.add_argument("--mode", choices=(EXACT, GRIDDED), default=None)

    p = sub.add_parser("solve", help="solve one problem")
    common(p)
    problem_opts(p)
    p = sub.add_parser("mv-solve", help="minimum variance with ICX and a mean floor")
    common(p)
    problem_opts(p)
    p.add_argument("--z", type=float, required=True)
    p = sub.add_parser("frontier", help="beating-performance / std-dev frontier")
    common(p, "csv")
    problem_opts(p)
    p.add_argument("--z-min", type=float, default=None)
    p.add_argument("--z-max", type=float, default=None)
    p.add_argument("--z-steps", type=int, default=FRONTIER_POINTS)
    p = sub.add_parser("psi", help="beating performance of a quantile")
    common(p)
    p.add_argument("--benchmark", required=True, help="benchmark quantile JSON")
    p = sub.add_parser("reduce", help="merge several benchmarks into one")
    common(p)
    p = sub.add_parser("oracle-check", help="compare the solver with the brute-force QP")
    common(p)
    problem_opts(p)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--check-tol", type=float, default=1e-3,
                   help="relative variance tolerance of the comparison")
    p = sub.add_parser("envelope", help="dump the convex (or concave) envelope as CSV")
    common(p, "csv")
    p.add_argument("--concave", action="store_true")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=ns.subcommand,
        input_path=ns.input,
        output_path=ns.output,
        format=ns.format,
        grid_size=getattr(ns, "grid_size", None),
        mode=getattr(ns, "mode", None),
        tol=ns.tol,
        icx_tol=ns.icx_tol,
        n=getattr(ns, "n", 2000),
        check_tol=getattr(ns, "check_tol", 1e-3),
        z=getattr(ns, "z", None),
        z_min=getattr(ns, "z_min", None),
        z_max=getattr(ns, "z_max", None),
        z_steps=getattr(ns, "z_steps", FRONTIER_POINTS),
        benchmark_path=getattr(ns, "benchmark", None),
        concave=getattr(ns, "concave", False),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        text, code = run(cfg)
    except (NumericalFailure, OracleFailure) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValidationError, DomainError, ValueError, TypeError, KeyError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:  # downstream reader closed early (e.g. ``| head``)
            sys.stdout = open(os.devnull, "w")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
