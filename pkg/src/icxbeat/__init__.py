"""Variance-minimal payoffs that beat a benchmark in increasing convex order."""
from .beating import (
    FrontierPoint,
    bpsd_frontier,
    frontier_z_min,
    mv_solve_with_icx,
    psi,
    reduce_benchmarks,
)
from .envelope import (
    EnvelopeResult,
    SampledFunction,
    concave_envelope,
    convex_envelope,
    envelope_slope_at,
)
from .market import DiscreteSdf, LogNormalSdf, moments, sdf_from_dict, tail_averages
from .quantile_core import (
    DomainError,
    StepFunction,
    StepQuantile,
    expected_upside,
    icx_dominates,
    mean,
    realize_payoff,
    second_moment,
    tail_integral,
    variance,
)
from .solver import (
    IcxProblem,
    IcxSolution,
    NumericalFailure,
    SdfAffineQuantile,
    budget_of_lambda,
    h,
    q_star_beta_lambda,
    solve,
    solve_beta,
    two_point_closed_form,
    validate_solution,
)

__version__ = "0.1.0"

__all__ = [
    "DiscreteSdf",
    "LogNormalSdf",
    "moments",
    "sdf_from_dict",
    "tail_averages",
    "FrontierPoint",
    "bpsd_frontier",
    "frontier_z_min",
    "mv_solve_with_icx",
    "psi",
    "reduce_benchmarks",
    "EnvelopeResult",
    "SampledFunction",
    "concave_envelope",
    "convex_envelope",
    "envelope_slope_at",
    "DomainError",
    "StepFunction",
    "StepQuantile",
    "expected_upside",
    "icx_dominates",
    "mean",
    "realize_payoff",
    "second_moment",
    "tail_integral",
    "variance",
    "IcxProblem",
    "IcxSolution",
    "NumericalFailure",
    "SdfAffineQuantile",
    "budget_of_lambda",
    "h",
    "q_star_beta_lambda",
    "solve",
    "solve_beta",
    "two_point_closed_form",
    "validate_solution",
]
