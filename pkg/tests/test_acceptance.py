"""Acceptance suite: one test per criterion, each at its stated tolerance.

Run on its own with ``python3 tests/test_acceptance.py`` or
``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""
import sys
import time

import numpy as np
import pytest

from icxbeat.beating import bpsd_frontier, psi, reduce_benchmarks
from icxbeat.cli import default_z_grid
from icxbeat.envelope import SampledFunction, cell_slopes, convex_envelope
from icxbeat.market import DiscreteSdf, LogNormalSdf
from icxbeat.oracle import oracle_solve
from icxbeat.quantile_core import StepQuantile, icx_dominates
from icxbeat.solver import (
    GENERAL,
    GRIDDED,
    TRIVIAL,
    IcxProblem,
    budget_of_lambda,
    solve,
    two_point_branch,
    two_point_closed_form,
    two_point_data,
)
from reference import brute_convex_envelope
from strategies import random_quantile, random_sampled, two_point

MARKET = LogNormalSdf(-0.1, 0.34)
X = 1.0
DELTAS = (0.10, 0.15, 0.20, 0.40)
# case of each delta, derived from the x-thresholds and confirmed by the QP
EXPECTED_CASES = {0.10: "a", 0.15: "b", 0.20: "c", 0.40: "c"}


def example_a(delta, **kw):
    return IcxProblem(MARKET, two_point(1.1 - delta, 1.1 + delta), X, **kw)


@pytest.mark.criterion(1, "trivial threshold alpha and constant payoff")
def test_criterion_01_trivial_threshold(record_property):
    t0 = time.perf_counter()
    alpha = X / MARKET.e_rho - 0.30
    assert abs(alpha - 0.7432) <= 2e-4
    p = IcxProblem(MARKET, two_point(alpha - 0.3, alpha + 0.3), X)
    sol = solve(p)
    elapsed = time.perf_counter() - t0
    record_property("detail", f"alpha={alpha:.6f} variance={sol.variance:g} t={elapsed:.3f}s")
    assert sol.case_tag == TRIVIAL
    assert np.ptp(sol.q_star.values) == 0.0
    assert sol.variance <= 1e-10
    assert elapsed < 1.0


@pytest.mark.criterion(2, "constant benchmark: closed form and oracle")
def test_criterion_02_constant_benchmark(record_property):
    z = 1.1
    p = IcxProblem(MARKET, StepQuantile.constant(z), X)
    sol = solve(p)
    closed = (z * MARKET.e_rho - X) ** 2 / MARKET.var_rho
    assert sol.variance == pytest.approx(closed, rel=1e-12)
    t0 = time.perf_counter()
    orc = oracle_solve(p, 2000)
    elapsed = time.perf_counter() - t0
    gap = abs(orc.variance - sol.variance) / sol.variance
    record_property("detail", f"closed={closed:.10g} oracle gap={gap:.2e} t_oracle={elapsed:.2f}s")
    assert gap <= 1e-3
    assert elapsed < 60.0


@pytest.mark.criterion(3, "two-point benchmark: closed form vs oracle and general branch")
def test_criterion_03_two_point(record_property):
    t0 = time.perf_counter()
    details = []
    for delta in DELTAS:
        p = example_a(delta)
        sol = two_point_closed_form(p)
        d = two_point_data(p)
        assert sol.diagnostics["case"] == d.case_for(X) == EXPECTED_CASES[delta]
        orc = oracle_solve(p, 2000)
        gen = solve(example_a(delta, grid_size=20000, mode=GRIDDED), closed_form=False)
        assert gen.case_tag == GENERAL
        g_or = abs(orc.variance - sol.variance) / sol.variance
        g_gen = abs(gen.variance - sol.variance) / sol.variance
        details.append(f"d={delta:.2f}:{sol.diagnostics['case']} or={g_or:.1e} gen={g_gen:.1e}")
        assert g_or <= 1e-3
        assert g_gen <= 1e-3
    elapsed = time.perf_counter() - t0
    record_property("detail", " ".join(details) + f" t={elapsed:.1f}s")
    assert elapsed < 300.0


@pytest.mark.criterion(4, "continuity across case thresholds")
def test_criterion_04_case_continuity(record_property):
    # open interval: the SDF is unbounded at s = 0
    s = np.concatenate(([1e-12, 1e-9], np.linspace(1e-6, 1 - 1e-6, 20001), [1 - 1e-12]))
    worst = 0.0
    for delta in DELTAS:
        d = two_point_data(example_a(delta))
        for x, (lo, hi) in ((d.x_ab, ("a", "b")), (d.x_bc, ("b", "c"))):
            p = IcxProblem(MARKET, example_a(delta).benchmark, x)
            c1, _, _ = two_point_branch(p, lo)
            c2, _, _ = two_point_branch(p, hi)
            diff = np.abs(c1(s) - c2(s))
            assert np.all(np.isfinite(diff))
            worst = max(worst, float(np.max(diff)))
    record_property("detail", f"max sup-norm jump {worst:.2e}")
    assert worst <= 1e-9


@pytest.mark.criterion(5, "multiplier map strictly decreasing with the small-lambda limit")
def test_criterion_05_multiplier_map(record_property):
    lams = np.geomspace(1e-4, 1e2, 50)
    worst_limit = 0.0
    for delta in DELTAS:
        p = example_a(delta)
        vals = np.array([budget_of_lambda(p, lam) for lam in lams])
        assert np.all(np.diff(vals) < 0), delta
        limit = p.benchmark.top * MARKET.e_rho
        rel = abs(budget_of_lambda(p, 1e-6) - limit) / limit
        worst_limit = max(worst_limit, rel)
    record_property("detail", f"max rel gap at lambda=1e-6: {worst_limit:.2e}")
    assert worst_limit <= 1e-3


@pytest.mark.criterion(6, "frontier: classical line, monotone, psi equals z")
def test_criterion_06_frontier(record_property):
    t0 = time.perf_counter()
    details = []
    for delta in (0.0, 0.2, 0.5):
        Q0 = StepQuantile.constant(0.0) if delta == 0 else two_point(-delta, delta)
        p = IcxProblem(MARKET, Q0, X, grid_size=4096)
        pts = bpsd_frontier(p, default_z_grid(p, 40))
        assert len(pts) == 40 and all(pt.error is None for pt in pts)
        z = np.array([pt.z for pt in pts])
        sd = np.array([pt.std_dev for pt in pts])
        if delta == 0.0:
            line = sd[0] + (sd[-1] - sd[0]) * (z - z[0]) / (z[-1] - z[0])
            dev = float(np.max(np.abs(sd - line)))
            details.append(f"d=0 collinearity {dev:.1e}")
            assert dev <= 1e-6
        else:
            assert np.all(np.diff(sd) >= 0)
            gaps = [abs(psi(pt.solution.q_star, Q0) - pt.z) for pt in pts
                    if pt.solution.case_tag != TRIVIAL]
            details.append(f"d={delta} max|psi-z| {max(gaps):.1e}")
            assert max(gaps) <= 1e-6
    elapsed = time.perf_counter() - t0
    record_property("detail", ", ".join(details) + f" t={elapsed:.1f}s")
    assert elapsed < 120.0


@pytest.mark.criterion(7, "envelope property suite on 1000 sampled functions")
def test_criterion_07_envelope_suite(record_property):
    rng = np.random.default_rng(7)
    tol = 1e-12
    for _ in range(1000):
        grid, vals = random_sampled(rng)
        f = SampledFunction(grid, vals)
        env = convex_envelope(f)
        # independent chord-minimum reference
        np.testing.assert_allclose(env.values, brute_convex_envelope(grid, vals), rtol=0, atol=tol)
        assert np.all(env.values <= vals + tol)
        assert env.values[0] == vals[0] and env.values[-1] == vals[-1]
        slopes = cell_slopes(env)
        assert np.all(np.diff(slopes) >= -tol)
        strict = np.flatnonzero(vals - env.values > tol)
        strict = strict[(strict > 0) & (strict < len(grid) - 1)]
        assert np.all(np.abs(slopes[strict] - slopes[strict - 1]) <= tol * (1 + np.abs(slopes[strict])))
        again = convex_envelope(SampledFunction(grid, env.values))
        np.testing.assert_allclose(again.values, env.values, rtol=0, atol=tol)
    record_property("detail", "1000 functions")


@pytest.mark.criterion(8, "psi contract suite on 1000 instances")
def test_criterion_08_psi_suite(record_property):
    rng = np.random.default_rng(8)
    for _ in range(1000):
        Q, Q0 = random_quantile(rng), random_quantile(rng)
        val = psi(Q, Q0)
        c = float(rng.uniform(-2, 2))
        assert abs(psi(Q.shift(c), Q0) - (val + c)) <= 1e-12
        const = float(rng.normal())
        assert abs(psi(StepQuantile.constant(const), Q0) - (const - Q0.top)) <= 1e-12
        assert abs(psi(Q, StepQuantile.constant(0.0)) - Q.integral()) <= 1e-12
        drop = rng.uniform(0, 1, len(Q.values))
        lower = StepQuantile(Q.breakpoints, np.minimum.accumulate((Q.values - drop)[::-1])[::-1])
        assert psi(lower, Q0) <= val + 1e-9
        z = val + float(rng.choice([-1, 1])) * float(rng.uniform(1e-6, 0.5))
        assert (val >= z) == icx_dominates(Q, Q0.shift(z), tol=1e-9)
        assert icx_dominates(Q, Q0.shift(val), tol=1e-9)
    record_property("detail", "1000 instances")


@pytest.mark.criterion(9, "multi-benchmark reduction equivalence")
def test_criterion_09_reduction(record_property):
    rng = np.random.default_rng(9)
    disagreements = 0
    feasible = 0
    for _ in range(100):
        bs = [random_quantile(rng, 5) for _ in range(int(rng.integers(2, 4)))]
        R = reduce_benchmarks(bs)
        for _ in range(100):
            Q = random_quantile(rng, 8)
            eps = float(rng.choice([-1, 1])) * float(rng.uniform(1e-6, 0.3))
            cand = Q.shift(eps - psi(Q, R))
            joint = all(icx_dominates(cand, b, 1e-9) for b in bs)
            single = icx_dominates(cand, R, 1e-9)
            disagreements += joint != single
            feasible += single
    record_property("detail", f"10000 candidates, {feasible} feasible, {disagreements} disagreements")
    assert disagreements == 0


@pytest.mark.criterion(10, "feasibility and binding budget of solver outputs")
def test_criterion_10_feasibility(record_property):
    benchmarks = [two_point(1.1 - d, 1.1 + d) for d in DELTAS]
    benchmarks += [two_point(a - 0.3, a + 0.3) for a in (1.0, 1.15, 1.20)]
    benchmarks += [StepQuantile.constant(1.1), StepQuantile([0, 0.2, 0.7, 1], [0.9, 1.1, 1.3])]
    rng = np.random.default_rng(10)
    for _ in range(10):
        Q = random_quantile(rng, 5, scale=0.3).shift(1.2)
        benchmarks.append(Q)
    markets = [MARKET, DiscreteSdf(StepQuantile([0, 0.1, 0.5, 0.9, 1], [0.4, 0.8, 1.1, 1.9]))]
    worst = {"exact": 0.0, GRIDDED: 0.0}
    count = 0
    for sdf in markets:
        for Q0 in benchmarks:
            x = min(X, 0.95 * Q0.top * sdf.e_rho)
            for mode in ("exact", GRIDDED):
                p = IcxProblem(sdf, Q0, x, grid_size=4096, mode=mode)
                for closed in (True, False):
                    sol = solve(p, closed_form=closed)
                    if sol.case_tag == TRIVIAL:
                        continue
                    count += 1
                    assert icx_dominates(sol.q_star, Q0, 1e-6)
                    worst[mode] = max(worst[mode], abs(sol.budget_used - x))
    record_property("detail", f"{count} solutions, max budget error exact={worst['exact']:.1e} "
                              f"gridded={worst[GRIDDED]:.1e}")
    assert worst["exact"] <= 1e-8
    assert worst[GRIDDED] <= 1e-5


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-rN"]))
