"""Payoff-versus-SDF curves for the log-normal example market.

Writes one CSV per configuration with columns ``s, rho, x_payoff`` and prints
the case tag, multiplier and variance of each solution.

    python3 scripts/payoff_vs_sdf.py --out results/payoffs
"""
from __future__ import annotations

import argparse
import glob
import json
import os

from icxbeat.cli import CURVE_POINTS, csv_text, payoff_curve
from icxbeat.solver import IcxProblem, solve

HERE = os.path.dirname(os.path.abspath(__file__))
DEFAULT_CONFIGS = sorted(glob.glob(os.path.join(HERE, "..", "configs", "exm_xo_*.json")))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("configs", nargs="*", default=DEFAULT_CONFIGS)
    ap.add_argument("--out", default="results/payoffs")
    ap.add_argument("--points", type=int, default=CURVE_POINTS)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for path in args.configs:
        with open(path) as fh:
            problem = IcxProblem.from_dict(json.load(fh))
        sol = solve(problem)
        name = os.path.splitext(os.path.basename(path))[0]
        with open(os.path.join(args.out, f"{name}.csv"), "w", newline="") as fh:
            fh.write(csv_text(["s", "rho", "x_payoff"], payoff_curve(sol, problem, args.points)))
        case = sol.diagnostics.get("case", "")
        print(f"{name:24s} {sol.case_tag:20s} {case:2s} lambda={sol.lam:.6g} "
              f"variance={sol.variance:.10g} budget={sol.budget_used:.12g}")


if __name__ == "__main__":
    main()
