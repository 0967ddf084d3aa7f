"""Brute-force check of the solver: the primal problem as a finite QP.

The quantile is restricted to step functions on a grid and the variance is
minimised directly subject to monotonicity, upper-tail sums and the budget.
Nothing from the envelope/duality machinery is used. The QP is handed to an
interior-point conic solver through cvxpy.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import cvxpy as cp
import numpy as np

from .quantile_core import StepQuantile, refine_grid, tail_integral, variance as step_variance
from .solver import (
    TRIVIAL,
    IcxProblem,
    IcxSolution,
    SdfAffineQuantile,
    curve_dominates,
    curve_price,
)


class OracleFailure(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class DiscretizedProgram:
    """``min sum w (q - beta)^2`` s.t. ``q`` nondecreasing, tail sums, budget."""

    grid: np.ndarray
    weights: np.ndarray
    price_weights: np.ndarray
    icx_rows: np.ndarray
    icx_rhs: np.ndarray
    budget: float

    @property
    def n(self) -> int:
        return len(self.weights)


@dataclass(frozen=True, eq=False)
class OracleResult:
    q: StepQuantile
    variance: float
    budget_used: float
    residuals: dict
    status: str


def build_program(problem: IcxProblem, n: int, row_stride: int = 1) -> DiscretizedProgram:
    """Discretise on ``n`` uniform cells refined by the benchmark jumps.

    Prices are exact cell integrals of ``Q_rho(1 - s)``. ICX rows sit at every
    benchmark jump and every ``row_stride``-th grid point.
    """
    if n < 50:
        raise ValueError("oracle grid needs n >= 50")
    Q0 = problem.benchmark
    uniform = np.linspace(0.0, 1.0, n + 1)
    grid = refine_grid(uniform, Q0.breakpoints)
    R = np.asarray(problem.sdf.cum_price(grid), dtype=float)
    R[0], R[-1] = 0.0, problem.sdf.e_rho
    on_stride = np.isin(grid, uniform[::row_stride]) | (np.arange(len(grid)) % row_stride == 0)
    on_jump = np.isin(grid, Q0.breakpoints)
    rows = np.flatnonzero((on_stride | on_jump) & (grid < 1.0))
    return DiscretizedProgram(
        grid=grid,
        weights=np.diff(grid),
        price_weights=np.diff(R),
        icx_rows=rows,
        icx_rhs=np.asarray(tail_integral(Q0, grid[rows])),
        budget=problem.budget,
    )


def oracle_solve(problem: IcxProblem, n: int = 2000, tol: float = 1e-9,
                 row_stride: int = 1, solver: str = "CLARABEL") -> OracleResult:
    prog = build_program(problem, n, row_stride)
    w = prog.weights
    q = cp.Variable(prog.n)
    beta = cp.Variable()
    # tail sums from the right: tails[i] = sum_{j >= i} w_j q_j
    tails = cp.cumsum(cp.multiply(w, q)[::-1])[::-1]
    constraints = [
        cp.diff(q) >= 0,
        tails[prog.icx_rows] >= prog.icx_rhs,
        prog.price_weights @ q <= prog.budget,
    ]
    objective = cp.Minimize(cp.sum(cp.multiply(w, cp.square(q - beta))))
    opts = {}
    if solver == "CLARABEL":
        opts = {"tol_gap_abs": tol, "tol_gap_rel": tol, "tol_feas": tol, "max_iter": 500}
    cp.Problem(objective, constraints).solve(solver=solver, **opts)
    status = str(cp.Problem(objective, constraints).status) if q.value is None else "solved"
    if q.value is None:
        raise OracleFailure(f"QP solver returned no solution ({status})")
    qv = np.maximum.accumulate(np.asarray(q.value, dtype=float))
    Q = StepQuantile(prog.grid, qv)
    tails_v = np.cumsum((w * qv)[::-1])[::-1]
    residuals = {
        "budget": max(0.0, float(prog.price_weights @ qv) - prog.budget),
        "icx": max(0.0, float(np.max(prog.icx_rhs - tails_v[prog.icx_rows]))),
        "monotone": max(0.0, float(-np.min(np.diff(q.value)))) if prog.n > 1 else 0.0,
    }
    return OracleResult(Q, step_variance(Q), float(prog.price_weights @ qv), residuals, status)


@dataclass
class OracleReport:
    oracle_variance: float
    solution_variance: float
    variance_rel_gap: float
    budget_used: float
    budget_ok: bool
    icx_ok: bool
    curve_l2: float
    curve_sup: float
    passed: bool
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _solution_cells(sol: IcxSolution, grid: np.ndarray) -> np.ndarray:
    curve = sol.exact_curve
    if isinstance(curve, SdfAffineQuantile):
        return curve.to_step(grid=grid).values
    return curve.cell_averages(grid)


def oracle_check(sol: IcxSolution, problem: IcxProblem, n: int = 2000, tol: float = 1e-3,
                 budget_tol: float = 1e-6, icx_tol: float = 1e-6,
                 oracle: Optional[OracleResult] = None) -> OracleReport:
    """Compare a solver output with the discretised optimum.

    Passes when the solution is budget- and ICX-feasible and its variance is
    within ``tol`` (relative) of the oracle's. Curve distances are reported on
    the oracle grid: ``curve_l2`` is the L2 distance scaled by the oracle
    standard deviation, and is gated at ``sqrt(tol)``.
    """
    if oracle is None:
        oracle = oracle_solve(problem, n)
    x = problem.budget
    curve = sol.exact_curve
    price = curve_price(curve, problem.sdf)
    budget_ok = price <= x + budget_tol * (1.0 + abs(x))
    icx_ok = curve_dominates(curve, problem.benchmark, icx_tol)
    v_or, v_sol = oracle.variance, sol.variance
    scale = max(v_or, 1e-8)
    rel_gap = abs(v_sol - v_or) / scale
    cells = _solution_cells(sol, oracle.q.breakpoints)
    diff = cells - oracle.q.values
    l2 = float(np.sqrt(np.dot(diff ** 2, oracle.q.widths)) / np.sqrt(scale))
    sup = float(np.max(np.abs(diff)))
    failures = []
    if not budget_ok:
        failures.append(f"budget violated: {price!r} > {x!r}")
    if not icx_ok:
        failures.append("ICX constraint violated")
    if sol.case_tag == TRIVIAL:
        if v_or > 1e-8:
            failures.append(f"trivial case but oracle variance {v_or!r}")
    elif rel_gap > tol:
        failures.append(f"variance gap {rel_gap:.3e} exceeds {tol:.1e}")
    if sol.case_tag != TRIVIAL and l2 > np.sqrt(tol):
        failures.append(f"curve L2 distance {l2:.3e} exceeds {np.sqrt(tol):.1e}")
    return OracleReport(v_or, v_sol, rel_gap, price, budget_ok, icx_ok, l2, sup,
                        not failures, failures)
