"""Beating-performance / standard-deviation frontiers for several benchmarks.

Benchmarks are symmetric two-point laws ``+-delta`` (``delta = 0`` is the zero
benchmark, i.e. the classical mean/standard-deviation frontier).

    python3 scripts/frontiers.py --deltas 0 0.2 0.5 --out results/frontiers
"""
from __future__ import annotations

import argparse
import os

from icxbeat.beating import bpsd_frontier, psi
from icxbeat.cli import csv_text, default_z_grid
from icxbeat.market import LogNormalSdf
from icxbeat.quantile_core import StepQuantile
from icxbeat.solver import IcxProblem


def benchmark(delta: float) -> StepQuantile:
    if delta == 0:
        return StepQuantile.constant(0.0)
    return StepQuantile([0.0, 0.5, 1.0], [-delta, delta])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--deltas", type=float, nargs="+", default=[0.0, 0.2, 0.5])
    ap.add_argument("--mu", type=float, default=-0.1)
    ap.add_argument("--sigma", type=float, default=0.34)
    ap.add_argument("--budget", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=40)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--out", default="results/frontiers")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    sdf = LogNormalSdf(args.mu, args.sigma)
    for delta in args.deltas:
        problem = IcxProblem(sdf, benchmark(delta), args.budget)
        z_grid = default_z_grid(problem, args.points)
        pts = bpsd_frontier(problem, z_grid, workers=args.workers)
        rows = [(p.z, p.std_dev) for p in pts]
        path = os.path.join(args.out, f"frontier_delta{int(round(delta * 100)):03d}.csv")
        with open(path, "w", newline="") as fh:
            fh.write(csv_text(["z", "std_dev"], rows))
        gaps = [abs(psi(p.solution.q_star, problem.benchmark) - p.z)
                for p in pts if p.solution is not None]
        print(f"delta={delta:.2f}: {len(pts)} points, std_dev in "
              f"[{min(r[1] for r in rows):.4f}, {max(r[1] for r in rows):.4f}], "
              f"max |psi - z| on gridded payoffs {max(gaps):.2e}")


if __name__ == "__main__":
    main()
