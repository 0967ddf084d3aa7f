"""Compare solver output with the brute-force QP on every shipped config.

    python3 scripts/oracle_sweep.py --n 2000
"""
from __future__ import annotations

import argparse
import glob
import json
import os
import time

from icxbeat.oracle import oracle_check
from icxbeat.solver import GENERAL, IcxProblem, solve

HERE = os.path.dirname(os.path.abspath(__file__))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("configs", nargs="*",
                    default=sorted(glob.glob(os.path.join(HERE, "..", "configs", "*.json"))))
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--tol", type=float, default=1e-3)
    ap.add_argument("--general", action="store_true", help="bypass the closed forms")
    args = ap.parse_args()
    for path in args.configs:
        with open(path) as fh:
            problem = IcxProblem.from_dict(json.load(fh))
        sol = solve(problem, closed_form=not args.general)
        t0 = time.perf_counter()
        rep = oracle_check(sol, problem, n=args.n, tol=args.tol)
        dt = time.perf_counter() - t0
        name = os.path.splitext(os.path.basename(path))[0]
        tag = sol.case_tag + ("*" if args.general and sol.case_tag == GENERAL else "")
        print(f"{name:24s} {tag:20s} var={sol.variance:.8g} oracle={rep.oracle_variance:.8g} "
              f"gap={rep.variance_rel_gap:.2e} l2={rep.curve_l2:.2e} "
              f"{'PASS' if rep.passed else 'FAIL'} ({dt:.2f}s)")


if __name__ == "__main__":
    main()
