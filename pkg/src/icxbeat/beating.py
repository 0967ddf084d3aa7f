"""Beating performance, efficient frontiers and benchmark reductions."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .envelope import SampledFunction, concave_envelope
from .quantile_core import StepQuantile, tail_integral, union_breakpoints
from .solver import DEFAULT_TOL, IcxProblem, IcxSolution, solve


def psi(Q: StepQuantile, Q0: StepQuantile) -> float:
    """Beating performance: the largest ``m`` with ``Q - m`` ICX-above ``Q0``.

    Uses ``psi = inf_t (1/t) int_{1-t}^1 (Q - Q0)``. With ``u = 1 - t`` the
    numerator is affine in ``u`` between breakpoints, so the ratio is monotone
    there and the infimum sits at a breakpoint (``u = 0`` gives the mean gap).
    """
    us = union_breakpoints(Q, Q0)[:-1]
    gap = tail_integral(Q, us) - tail_integral(Q0, us)
    return float(np.min(gap / (1.0 - us)))


@dataclass(frozen=True)
class FrontierPoint:
    z: float
    std_dev: float
    solution: Optional[IcxSolution]
    error: Optional[str] = None


def frontier_z_min(problem: IcxProblem) -> float:
    """Smallest admissible performance level, reached by the riskless payoff."""
    return problem.budget / problem.sdf.e_rho - problem.benchmark.top


def bpsd_frontier(problem: IcxProblem, z_grid: Sequence[float], tol: float = DEFAULT_TOL,
                  workers: Optional[int] = None) -> list[FrontierPoint]:
    """Beating-performance / standard-deviation frontier at the given levels.

    Each point solves the variance-minimal problem against ``Q_0 + z``. Levels
    below the riskless one get an error entry. Output order follows ``z_grid``.
    """
    z_min = frontier_z_min(problem)
    slack = 1e-12 * (1.0 + abs(z_min))

    def one(z: float) -> FrontierPoint:
        z = float(z)
        if z < z_min - slack:
            return FrontierPoint(z, math.nan, None, f"z={z!r} below frontier minimum {z_min!r}")
        sol = solve(problem.with_benchmark(problem.benchmark.shift(z)), tol)
        return FrontierPoint(z, sol.std_dev, sol)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, z_grid))
    return [one(z) for z in z_grid]


def _tail_max_points(benchmarks: Sequence[StepQuantile]) -> tuple[np.ndarray, np.ndarray]:
    """Vertices of ``g(t) = max_j int_t^1 Q_j``, crossings included."""
    knots = union_breakpoints(*benchmarks)
    pts = [knots]
    tails = np.array([tail_integral(Q, knots) for Q in benchmarks])
    for lo in range(len(knots) - 1):
        t0, t1 = knots[lo], knots[lo + 1]
        for i, j in combinations(range(len(benchmarks)), 2):
            d0 = tails[i, lo] - tails[j, lo]
            d1 = tails[i, lo + 1] - tails[j, lo + 1]
            if d0 * d1 < 0:
                pts.append([t0 + (t1 - t0) * d0 / (d0 - d1)])
    ts = np.unique(np.concatenate(pts))
    g = np.max([tail_integral(Q, ts) for Q in benchmarks], axis=0)
    return ts, g


def reduce_benchmarks(benchmarks: Sequence[StepQuantile]) -> StepQuantile:
    """Single benchmark equivalent to beating every benchmark in the list.

    ``Q`` ICX-dominates all of them iff it dominates the result, whose tail
    integral is the concave envelope of the pointwise maximum of theirs.
    """
    if not benchmarks:
        raise ValueError("need at least one benchmark")
    ts, g = _tail_max_points(benchmarks)
    env = concave_envelope(SampledFunction(ts, g))
    vals = -env.slopes.values
    return StepQuantile(env.slopes.breakpoints, np.maximum.accumulate(vals)).simplify()


def mv_solve_with_icx(problem: IcxProblem, z: float, tol: float = DEFAULT_TOL) -> IcxSolution:
    """Minimise variance subject to the ICX constraint and ``E[Q] >= z``.

    A mean floor is ICX-dominance over the constant ``z``, so the two
    constraints collapse into one reduced benchmark.
    """
    base = solve(problem, tol)
    if base.q_star.integral() >= z:
        return base
    reduced = reduce_benchmarks([problem.benchmark, StepQuantile.constant(z)])
    return solve(problem.with_benchmark(reduced), tol)
