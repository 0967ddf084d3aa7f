"""Variance-minimal payoffs under an increasing-convex-order benchmark constraint.

For a multiplier ``lam > 0`` and level ``beta`` the Lagrangian problem is solved
in closed form from the convex envelope of

    N(s) = int_0^s (lam * Q_rho(1 - t) + 2 * Q_0(t)) dt,

whose right derivative ``dN`` gives

    Q*(s) = beta + ((dN(s) - 2 beta)^+ - lam * Q_rho((1 - s)-)) / 2.

``beta`` is pinned by ``h(beta, lam) = 0`` and ``lam`` by the binding budget.

Two discretisations are offered. In ``exact`` mode the hull vertices are
restricted to the benchmark jump points: ``N`` is concave between them, so the
envelope and every integral are exact and the SDF term of ``Q*`` is carried
symbolically. In ``gridded`` mode ``Q`` is restricted to step functions on a
uniform grid (refined by the benchmark jumps), with the SDF replaced by its
cell averages; the result is the exact optimum over that class.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional, Union

import numpy as np

from .envelope import SampledFunction, cell_slopes, convex_envelope
from .market import SdfModel, sdf_from_dict
from .quantile_core import (
    DEFAULT_ICX_TOL,
    DomainError,
    StepFunction,
    StepQuantile,
    icx_dominates,
    tail_integral,
    refine_grid,
    variance as step_variance,
)

EXACT = "exact"
GRIDDED = "gridded"

TRIVIAL = "Trivial"
CLOSED_FORM_CONSTANT = "ClosedFormConstant"
CLOSED_FORM_TWO_POINT = "ClosedFormTwoPoint"
GENERAL = "General"
CASE_TAGS = (TRIVIAL, CLOSED_FORM_CONSTANT, CLOSED_FORM_TWO_POINT, GENERAL)

DEFAULT_TOL = 1e-10
LAMBDA_MAX_ITER = 200


class NumericalFailure(RuntimeError):
    """A root bracket could not be found or an iteration did not converge."""


@dataclass(frozen=True, eq=False)
class IcxProblem:
    sdf: SdfModel
    benchmark: StepQuantile
    budget: float
    grid_size: int = 4096
    mode: str = EXACT

    def __post_init__(self):
        if self.mode not in (EXACT, GRIDDED):
            raise ValueError(f"mode must be {EXACT!r} or {GRIDDED!r}")
        if not isinstance(self.benchmark, StepQuantile):
            raise TypeError("benchmark must be a StepQuantile")
        if int(self.grid_size) < 1:
            raise ValueError("grid_size must be positive")
        if not math.isfinite(self.budget):
            raise ValueError("budget must be finite")

    @property
    def threshold(self) -> float:
        """``Q_0(1) E[rho]``: budgets at or above it admit constant payoffs."""
        return self.benchmark.top * self.sdf.e_rho

    def is_trivial(self) -> bool:
        return self.threshold - self.budget <= 1e-13 * (1.0 + abs(self.budget))

    def with_benchmark(self, benchmark: StepQuantile) -> "IcxProblem":
        return replace(self, benchmark=benchmark)

    @cached_property
    def layout(self) -> "_Layout":
        return _Layout(self)

    def to_dict(self) -> dict:
        return {"sdf": self.sdf.to_dict(), "benchmark": self.benchmark.to_dict(),
                "budget": self.budget, "grid_size": self.grid_size, "mode": self.mode}

    @classmethod
    def from_dict(cls, d: dict) -> "IcxProblem":
        extra = set(d) - {"sdf", "benchmark", "budget", "grid_size", "mode"}
        if extra:
            raise ValueError(f"unknown fields in problem: {sorted(extra)}")
        return cls(
            sdf=sdf_from_dict(d["sdf"]),
            benchmark=StepQuantile.from_dict(d["benchmark"]),
            budget=float(d["budget"]),
            grid_size=int(d.get("grid_size", 4096)),
            mode=d.get("mode", EXACT),
        )


@dataclass(frozen=True, eq=False)
class SdfAffineQuantile:
    """Quantile of the form ``offset(s) - scale * Q_rho((1 - s)-)``.

    ``offset`` is a nondecreasing step function and ``scale >= 0``; this is the
    shape of every optimiser, and all its moments are available in closed form.
    """

    offsets: StepFunction
    scale: float
    sdf: SdfModel

    def __call__(self, s):
        s_arr = np.asarray(s, dtype=float)
        out = self.offsets(s_arr) - self.scale * self.sdf.quantile_leftlim(1.0 - s_arr)
        return float(out) if np.ndim(out) == 0 else out

    @cached_property
    def _dR(self) -> np.ndarray:
        return np.diff(self.sdf.cum_price(self.offsets.breakpoints))

    def mean(self) -> float:
        return self.offsets.integral() - self.scale * self.sdf.e_rho

    def price(self) -> float:
        return float(np.dot(self.offsets.values, self._dR)) - self.scale * self.sdf.e_rho2

    def variance(self) -> float:
        c, w, k = self.offsets.values, self.offsets.widths, self.scale
        m = self.mean()
        # E[(Q - m)^2] with the SDF cross term integrated cell by cell
        cm = c - m
        val = float(np.dot(cm ** 2, w)) - 2.0 * k * float(np.dot(cm, self._dR)) + k * k * self.sdf.e_rho2
        return max(val, 0.0)

    def tail_integral(self, t):
        t_arr = np.asarray(t, dtype=float)
        out = tail_integral(self.offsets, t_arr) - self.scale * self.sdf.residual_price(t_arr)
        return float(out) if np.ndim(out) == 0 else out

    def default_grid(self, n: int) -> np.ndarray:
        quant = getattr(self.sdf, "quantile_fn", None)
        if quant is not None:
            # SDF atoms make Q a step function: its own breakpoints suffice
            base = 1.0 - quant.breakpoints[::-1]
        else:
            base = np.linspace(0.0, 1.0, n + 1)
        return refine_grid(base, self.offsets.breakpoints)

    def to_step(self, n: int = 4096, grid=None) -> StepQuantile:
        """Cell averages on ``grid``; exact for discrete SDFs."""
        if grid is None:
            grid = self.default_grid(n)
        grid = np.asarray(grid, dtype=float)
        vals = self.offsets.cell_averages(grid) - self.scale * self.sdf.cell_means(grid)
        return StepQuantile(grid, np.maximum.accumulate(vals))

    def to_dict(self) -> dict:
        return {"offsets": self.offsets.to_dict(), "scale": self.scale}


Curve = Union[SdfAffineQuantile, StepQuantile]


def curve_price(curve: Curve, sdf: SdfModel) -> float:
    return curve.price() if isinstance(curve, SdfAffineQuantile) else sdf.price(curve)


def curve_variance(curve: Curve) -> float:
    return curve.variance() if isinstance(curve, SdfAffineQuantile) else step_variance(curve)


def curve_mean(curve: Curve) -> float:
    return curve.mean() if isinstance(curve, SdfAffineQuantile) else curve.integral()


def curve_tail(curve: Curve, t):
    return curve.tail_integral(t) if isinstance(curve, SdfAffineQuantile) else tail_integral(curve, t)


def curve_dominates(curve: Curve, benchmark: StepQuantile, tol: float = DEFAULT_ICX_TOL) -> bool:
    """ICX check for a solution curve.

    The tail integral of an increasing curve is concave, and the benchmark's is
    affine between its jumps, so the gap is minimised at breakpoints.
    """
    if isinstance(curve, StepQuantile):
        return icx_dominates(curve, benchmark, tol)
    ts = np.unique(np.concatenate([curve.offsets.breakpoints, benchmark.breakpoints]))
    gap = curve.tail_integral(ts) - tail_integral(benchmark, ts)
    return bool(np.all(gap >= -tol))


@dataclass(frozen=True, eq=False)
class IcxSolution:
    q_star: StepQuantile
    lam: float
    beta: float
    variance: float
    budget_used: float
    case_tag: str
    mode: str = EXACT
    curve: Optional[Curve] = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def std_dev(self) -> float:
        return math.sqrt(self.variance)

    @property
    def exact_curve(self) -> Curve:
        return self.curve if self.curve is not None else self.q_star

    def to_dict(self) -> dict:
        d = {
            "case_tag": self.case_tag,
            "mode": self.mode,
            "lambda": self.lam,
            "beta": self.beta,
            "variance": self.variance,
            "budget_used": self.budget_used,
            "q_star": self.q_star.to_dict(),
            "diagnostics": self.diagnostics,
        }
        if isinstance(self.curve, SdfAffineQuantile):
            d["curve"] = self.curve.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict, sdf: SdfModel) -> "IcxSolution":
        known = {"case_tag", "mode", "lambda", "beta", "variance", "budget_used",
                 "q_star", "diagnostics", "curve"}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown fields in solution: {sorted(extra)}")
        if d["case_tag"] not in CASE_TAGS:
            raise ValueError(f"unknown case tag {d['case_tag']!r}")
        curve = None
        if "curve" in d:
            curve = SdfAffineQuantile(StepFunction.from_dict(d["curve"]["offsets"]),
                                      float(d["curve"]["scale"]), sdf)
        return cls(
            q_star=StepQuantile.from_dict(d["q_star"]),
            lam=float(d["lambda"]),
            beta=float(d["beta"]),
            variance=float(d["variance"]),
            budget_used=float(d["budget_used"]),
            case_tag=d["case_tag"],
            mode=d.get("mode", EXACT),
            curve=curve,
            diagnostics=dict(d.get("diagnostics", {})),
        )


def validate_solution(sol: IcxSolution, problem: IcxProblem, budget_tol: float = 1e-8,
                      icx_tol: float = 1e-6) -> list[str]:
    """Return a list of violated solution invariants (empty when valid)."""
    problems = []
    x = problem.budget
    curve = sol.exact_curve
    price = curve_price(curve, problem.sdf)
    if abs(price - sol.budget_used) > budget_tol * (1.0 + abs(x)):
        problems.append(f"reported budget {sol.budget_used!r} differs from repriced {price!r}")
    if price > x + budget_tol * (1.0 + abs(x)):
        problems.append(f"budget exceeded: {price!r} > {x!r}")
    if sol.case_tag != TRIVIAL and abs(price - x) > budget_tol * (1.0 + abs(x)):
        problems.append(f"budget not binding: {price!r} vs {x!r}")
    if not curve_dominates(curve, problem.benchmark, icx_tol):
        problems.append("solution does not dominate the benchmark in ICX order")
    if sol.variance < 0:
        problems.append("negative variance")
    if (sol.case_tag == TRIVIAL) != (sol.variance == 0.0):
        problems.append("variance must vanish exactly in the trivial case only")
    if np.any(np.diff(sol.q_star.values) < 0):
        problems.append("q_star is not nondecreasing")
    return problems


class _Layout:
    """Per-problem discretisation shared by all multiplier evaluations."""

    def __init__(self, problem: IcxProblem):
        sdf, Q0 = problem.sdf, problem.benchmark
        self.problem = problem
        self.exact = problem.mode == EXACT
        if self.exact:
            nodes = Q0.breakpoints.copy()
        else:
            nodes = refine_grid(np.linspace(0.0, 1.0, int(problem.grid_size) + 1), Q0.breakpoints)
        self.nodes = nodes
        self.widths = np.diff(nodes)
        R = np.asarray(sdf.cum_price(nodes), dtype=float)
        R[0], R[-1] = 0.0, sdf.e_rho
        self.R = R
        self.dR = np.diff(R)
        self.B = np.asarray(Q0.cumulative(nodes), dtype=float)
        self.e_rho = sdf.e_rho
        if self.exact:
            self.e_rho2 = sdf.e_rho2
            self.rho_cells = None
        else:
            self.rho_cells = self.dR / self.widths
            self.e_rho2 = float(np.dot(self.rho_cells ** 2, self.widths))

    def slopes(self, lam: float) -> np.ndarray:
        """Right derivative of the convex envelope of ``N_lam`` on every cell."""
        env = convex_envelope(SampledFunction(self.nodes, lam * self.R + 2.0 * self.B))
        return cell_slopes(env)

    def h(self, beta: float, lam: float, slopes: np.ndarray) -> float:
        return lam * self.e_rho - float(np.dot(np.maximum(slopes - 2.0 * beta, 0.0), self.widths))

    def beta_root(self, lam: float, slopes: np.ndarray) -> float:
        """Exact root of the piecewise-linear, increasing ``beta -> h(beta, lam)``."""
        target = lam * self.e_rho
        order = np.argsort(-slopes, kind="stable")
        sig, w = slopes[order], self.widths[order]
        W = np.cumsum(w)
        S = np.cumsum(w * sig)
        # value of sum w (sig - 2 beta)^+ at each kink beta = sig_k / 2
        at_kinks = S - sig * W
        k = int(np.searchsorted(at_kinks, target, side="right"))
        k = min(max(k, 1), len(sig))
        return float((S[k - 1] - target) / (2.0 * W[k - 1]))

    def offsets(self, beta: float, slopes: np.ndarray) -> np.ndarray:
        return beta + 0.5 * np.maximum(slopes - 2.0 * beta, 0.0)

    def budget(self, offsets: np.ndarray, lam: float) -> float:
        return float(np.dot(offsets, self.dR)) - 0.5 * lam * self.e_rho2

    def curve(self, offsets: np.ndarray, lam: float) -> Curve:
        if self.exact:
            return SdfAffineQuantile(StepFunction(self.nodes, offsets), 0.5 * lam, self.problem.sdf)
        vals = offsets - 0.5 * lam * self.rho_cells
        return StepQuantile(self.nodes, np.maximum.accumulate(vals))

    def evaluate(self, lam: float) -> tuple[float, np.ndarray, float]:
        """``(beta_lam, offsets, budget)`` at multiplier ``lam``."""
        sl = self.slopes(lam)
        beta = self.beta_root(lam, sl)
        off = self.offsets(beta, sl)
        return beta, off, self.budget(off, lam)


def _check_lambda(lam: float):
    if not (lam > 0 and math.isfinite(lam)):
        raise DomainError("lambda must be positive and finite")


def _to_step(curve: Curve, problem: IcxProblem) -> StepQuantile:
    if isinstance(curve, SdfAffineQuantile):
        return curve.to_step(int(problem.grid_size))
    return curve


def q_star_curve(problem: IcxProblem, beta: float, lam: float) -> Curve:
    """Minimiser of the Lagrangian at fixed ``(beta, lam)`` as an exact curve."""
    _check_lambda(lam)
    lay = problem.layout
    return lay.curve(lay.offsets(beta, lay.slopes(lam)), lam)


def q_star_beta_lambda(problem: IcxProblem, beta: float, lam: float) -> StepQuantile:
    return _to_step(q_star_curve(problem, beta, lam), problem)


def h(problem: IcxProblem, beta: float, lam: float) -> float:
    """Derivative in ``beta`` of the Lagrangian value ``v(beta, lam)``."""
    _check_lambda(lam)
    lay = problem.layout
    return lay.h(beta, lam, lay.slopes(lam))


def solve_beta(problem: IcxProblem, lam: float, tol: float = DEFAULT_TOL,
               method: str = "exact") -> float:
    """Root ``beta_lam`` of ``h(., lam)``.

    ``h`` is piecewise linear and strictly increasing wherever it is not
    positive, so the root is unique. ``method="exact"`` solves the bracketing
    linear piece directly; ``method="bisect"`` expands a bracket around the
    benchmark mean and bisects until ``|h| <= tol``.
    """
    _check_lambda(lam)
    lay = problem.layout
    sl = lay.slopes(lam)
    if method == "exact":
        return lay.beta_root(lam, sl)
    if method != "bisect":
        raise ValueError(f"unknown method {method!r}")
    b0 = problem.benchmark.integral()
    radius = 1.0
    limit = 1e6 * (1.0 + abs(b0))
    while not (lay.h(b0 - radius, lam, sl) < 0 < lay.h(b0 + radius, lam, sl)):
        radius *= 2.0
        if radius > limit:
            raise NumericalFailure("could not bracket the root of h")
    lo, hi = b0 - radius, b0 + radius
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        val = lay.h(mid, lam, sl)
        if abs(val) <= tol or hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(mid)):
            return mid
        if val < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def budget_of_lambda(problem: IcxProblem, lam: float) -> float:
    """Price of the optimiser ``Q*_lam``; strictly decreasing in ``lam``."""
    _check_lambda(lam)
    return problem.layout.evaluate(lam)[2]


def _solution_from_curve(problem, curve, lam, beta, case_tag, diagnostics) -> IcxSolution:
    return IcxSolution(
        q_star=_to_step(curve, problem),
        lam=float(lam),
        beta=float(beta),
        variance=curve_variance(curve),
        budget_used=curve_price(curve, problem.sdf),
        case_tag=case_tag,
        mode=problem.mode,
        curve=curve,
        diagnostics=diagnostics,
    )


def trivial_solution(problem: IcxProblem) -> IcxSolution:
    """Constant payoff spending the whole budget; optimal when it beats ``Q_0(1)``."""
    c = problem.budget / problem.sdf.e_rho
    q = StepQuantile.constant(c)
    return IcxSolution(
        q_star=q, lam=0.0, beta=c, variance=0.0, budget_used=problem.budget,
        case_tag=TRIVIAL, mode=problem.mode, curve=None,
        diagnostics={"optimal_constants": [problem.benchmark.top, c]},
    )


def constant_closed_form(problem: IcxProblem) -> IcxSolution:
    """Classical mean-variance optimum for a constant benchmark ``z``."""
    Q0 = problem.benchmark.simplify()
    if len(Q0) != 1:
        raise DomainError("benchmark is not constant")
    z = Q0.top
    sdf = problem.sdf
    k = (z * sdf.e_rho - problem.budget) / sdf.var_rho
    if k <= 0:
        raise DomainError("budget admits a constant payoff; use the trivial branch")
    curve = SdfAffineQuantile(StepFunction([0.0, 1.0], [z + k * sdf.e_rho]), k, sdf)
    return _solution_from_curve(problem, curve, 2.0 * k, z, CLOSED_FORM_CONSTANT, {})


@dataclass(frozen=True)
class TwoPointData:
    a: float
    b: float
    p: float
    A1: float
    A2: float
    e_rho: float
    e_rho2: float
    var_rho: float

    @property
    def mean_benchmark(self) -> float:
        return self.p * self.a + (1.0 - self.p) * self.b

    @property
    def denom_c(self) -> float:
        p = self.p
        return (1 - p) * self.e_rho2 + p * p * self.A1 ** 2 - (1 - p) ** 2 * self.A2 ** 2

    @property
    def x_ab(self) -> float:
        """Budget separating cases (a) and (b)."""
        return self.mean_benchmark * self.e_rho - (self.b - self.a) / (self.A1 - self.A2) * self.var_rho

    @property
    def x_bc(self) -> float:
        """Budget separating cases (b) and (c)."""
        return self.b * self.e_rho - (self.b - self.a) / self.A1 * self.denom_c

    @property
    def lambda_ab(self) -> float:
        return 2.0 * (self.b - self.a) / (self.A1 - self.A2)

    @property
    def lambda_bc(self) -> float:
        return 2.0 * (self.b - self.a) * (1.0 - self.p) / self.A1

    def case_for(self, x: float) -> str:
        # ties go to the lower-numbered case
        if x <= self.x_ab:
            return "a"
        if x <= self.x_bc:
            return "b"
        return "c"


def two_point_data(problem: IcxProblem) -> TwoPointData:
    Q0 = problem.benchmark.simplify()
    if len(Q0) != 2:
        raise DomainError("benchmark does not have exactly two atoms")
    p = float(Q0.breakpoints[1])
    A1, A2 = problem.sdf.tail_averages(p)
    sdf = problem.sdf
    return TwoPointData(float(Q0.values[0]), float(Q0.values[1]), p, A1, A2,
                        sdf.e_rho, sdf.e_rho2, sdf.var_rho)


def two_point_branch(problem: IcxProblem, case: str) -> tuple[SdfAffineQuantile, float, float]:
    """Evaluate the closed-form optimiser of one case regardless of its x-range.

    Returns ``(curve, lam, beta)``.
    """
    d = two_point_data(problem)
    x = problem.budget
    a, b, p, A1, A2 = d.a, d.b, d.p, d.A1, d.A2
    if case == "a":
        k = (d.mean_benchmark * d.e_rho - x) / d.var_rho
        off = [d.mean_benchmark + k * d.e_rho] * 2
        beta = d.mean_benchmark
    elif case == "b":
        k = (a * p * A1 + b * (1 - p) * A2 - x) / (d.e_rho2 - p * A1 ** 2 - (1 - p) * A2 ** 2)
        off = [a + k * A1, b + k * A2]
        beta = d.mean_benchmark
    elif case == "c":
        gap = b * d.e_rho - x
        k = (1 - p) * gap / d.denom_c
        off = [b - p * gap / d.denom_c * A1, b + k * A2]
        beta = b - k * p * A1 / (1 - p)
    else:
        raise ValueError(f"unknown case {case!r}")
    curve = SdfAffineQuantile(StepFunction([0.0, p, 1.0], off), k, problem.sdf)
    return curve, 2.0 * k, beta


def two_point_closed_form(problem: IcxProblem) -> IcxSolution:
    """Closed-form optimiser for a benchmark with two atoms ``a < b``."""
    d = two_point_data(problem)
    x = problem.budget
    if x >= d.b * d.e_rho:
        raise DomainError("budget admits a constant payoff; use the trivial branch")
    case = d.case_for(x)
    curve, lam, beta = two_point_branch(problem, case)
    diag = {"case": case, "x_ab": d.x_ab, "x_bc": d.x_bc, "A1": d.A1, "A2": d.A2}
    return _solution_from_curve(problem, curve, lam, beta, CLOSED_FORM_TWO_POINT, diag)


def solve_lambda(problem: IcxProblem, tol: float = DEFAULT_TOL, lam_lo: float = 1e-8,
                 lam_hi: float = 1.0) -> tuple[float, float, np.ndarray, float, dict]:
    """Bisection for the multiplier with binding budget.

    Returns ``(lam, beta, offsets, budget, diagnostics)``.
    """
    lay = problem.layout
    x = problem.budget
    target = tol * (1.0 + abs(x))
    lo, hi = float(lam_lo), float(lam_hi)
    ev_hi = lay.evaluate(hi)
    while ev_hi[2] >= x:
        hi *= 2.0
        if hi > 1e300:
            raise NumericalFailure("budget did not fall below x")
        ev_hi = lay.evaluate(hi)
    ev_lo = lay.evaluate(lo)
    while ev_lo[2] <= x:
        lo *= 0.5
        if lo < 1e-300:
            raise NumericalFailure("budget did not rise above x")
        ev_lo = lay.evaluate(lo)
    best = min((abs(ev_lo[2] - x), lo, ev_lo), (abs(ev_hi[2] - x), hi, ev_hi), key=lambda t: t[0])
    it = 0
    for it in range(1, LAMBDA_MAX_ITER + 1):
        if best[0] <= target:
            break
        # geometric steps while the bracket spans decades
        mid = math.sqrt(lo * hi) if hi > 4.0 * lo else 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        ev = lay.evaluate(mid)
        if abs(ev[2] - x) < best[0]:
            best = (abs(ev[2] - x), mid, ev)
        if ev[2] > x:
            lo = mid
        else:
            hi = mid
    _, lam, (beta, off, bud) = best
    if abs(bud - x) > 1e3 * target:
        raise NumericalFailure(f"multiplier search stalled with budget error {abs(bud - x):.3e}")
    return lam, beta, off, bud, {"iterations": it, "bracket": [lo, hi]}


def solve(problem: IcxProblem, tol: float = DEFAULT_TOL, closed_form: bool = True,
          lam_bracket: tuple[float, float] = (1e-8, 1.0)) -> IcxSolution:
    """Variance-minimal quantile for ``problem``.

    With ``closed_form=False`` the general envelope/bisection route is used even
    for one- and two-atom benchmarks.
    """
    if problem.is_trivial():
        return trivial_solution(problem)
    n_atoms = len(problem.benchmark.simplify())
    if closed_form and n_atoms == 1:
        return constant_closed_form(problem)
    if closed_form and n_atoms == 2:
        return two_point_closed_form(problem)
    lam, beta, off, _, diag = solve_lambda(problem, tol, *lam_bracket)
    curve = problem.layout.curve(off, lam)
    return _solution_from_curve(problem, curve, lam, beta, GENERAL, diag)
