"""Stochastic discount factor models for a complete one-period market.

Payoffs are priced by ``E[rho X]``. Under the comonotone coupling a payoff
with quantile ``Q`` is priced by ``int_0^1 Q(s) Q_rho(1 - s) ds``, so most of
the work below is about integrals of ``s -> Q_rho(1 - s)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np

from .normal import norm_cdf, norm_ppf
from .quantile_core import DomainError, StepFunction, StepQuantile, tail_integral


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


class _SdfBase:
    """Shared pricing helpers; subclasses supply quantiles and partial integrals."""

    @property
    def var_rho(self) -> float:
        return self.e_rho2 - self.e_rho ** 2

    def moments(self) -> tuple[float, float, float]:
        return self.e_rho, self.e_rho2, self.var_rho

    def cum_price(self, s):
        """``R(s) = int_0^s Q_rho(1 - t) dt``: price of the top-``s`` slice."""
        raise NotImplementedError

    def residual_price(self, t):
        """``int_t^1 Q_rho(1 - s) ds = E[rho] - R(t)``."""
        raise NotImplementedError

    def cell_means(self, grid) -> np.ndarray:
        """Average of ``Q_rho(1 - s)`` over each cell of ``grid``."""
        grid = np.asarray(grid, dtype=float)
        return np.diff(self.cum_price(grid)) / np.diff(grid)

    def price(self, Q: StepFunction) -> float:
        """Exact budget ``int_0^1 Q(s) Q_rho(1 - s) ds`` of a step payoff."""
        return float(np.dot(Q.values, np.diff(self.cum_price(Q.breakpoints))))

    def tail_averages(self, p: float) -> tuple[float, float]:
        """Conditional means of ``Q_rho(1 - s)`` over ``[0, p)`` and ``[p, 1)``."""
        if not 0.0 < p < 1.0:
            raise DomainError("p must lie in (0, 1)")
        head = self.cum_price(p)
        return head / p, (self.e_rho - head) / (1.0 - p)


@dataclass(frozen=True)
class LogNormalSdf(_SdfBase):
    """``log rho ~ N(mu, sigma^2)``."""

    mu: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma)) or self.sigma <= 0:
            raise ValueError("need finite mu and sigma > 0")

    @cached_property
    def e_rho(self) -> float:
        return math.exp(self.mu + 0.5 * self.sigma ** 2)

    @cached_property
    def e_rho2(self) -> float:
        return math.exp(2.0 * self.mu + 2.0 * self.sigma ** 2)

    @property
    def var_rho(self) -> float:
        # expm1 keeps relative accuracy for small sigma
        return self.e_rho ** 2 * math.expm1(self.sigma ** 2)

    def quantile(self, s):
        s_arr = np.asarray(s, dtype=float)
        if np.any((s_arr < 0) | (s_arr >= 1)):
            raise DomainError("log-normal quantile needs s in [0, 1)")
        return _scalar(np.exp(self.mu + self.sigma * norm_ppf(s_arr)))

    def quantile_leftlim(self, s):
        s_arr = np.asarray(s, dtype=float)
        if np.any((s_arr <= 0) | (s_arr > 1)):
            raise DomainError("left limit needs s in (0, 1]")
        with np.errstate(over="ignore"):
            return _scalar(np.exp(self.mu + self.sigma * norm_ppf(s_arr)))

    def cum_price(self, s):
        # E[rho; rho > Q_rho(1-s)] = E[rho] Phi(sigma + Phi^{-1}(s))
        return _scalar(self.e_rho * norm_cdf(self.sigma + norm_ppf(s)))

    def residual_price(self, t):
        return _scalar(self.e_rho * norm_cdf(-self.sigma - norm_ppf(t)))

    def to_dict(self) -> dict:
        return {"type": "lognormal", "mu": self.mu, "sigma": self.sigma}


@dataclass(frozen=True)
class DiscreteSdf(_SdfBase):
    """SDF with finitely many positive values, given by its quantile."""

    quantile_fn: StepQuantile = field()

    def __post_init__(self):
        q = self.quantile_fn
        if not isinstance(q, StepQuantile):
            raise TypeError("quantile_fn must be a StepQuantile")
        if np.any(q.values <= 0):
            raise ValueError("SDF values must be strictly positive")
        if q.values[0] == q.values[-1]:
            raise ValueError("SDF must be non-constant (Var[rho] > 0)")

    @cached_property
    def e_rho(self) -> float:
        return self.quantile_fn.integral()

    @cached_property
    def e_rho2(self) -> float:
        return float(np.dot(self.quantile_fn.values ** 2, self.quantile_fn.widths))

    @property
    def var_rho(self) -> float:
        q = self.quantile_fn
        return float(np.dot((q.values - self.e_rho) ** 2, q.widths))

    def quantile(self, s):
        s_arr = np.asarray(s, dtype=float)
        if np.any((s_arr < 0) | (s_arr > 1)):
            raise DomainError("s must lie in [0, 1]")
        return self.quantile_fn(s_arr)

    def quantile_leftlim(self, s):
        s_arr = np.asarray(s, dtype=float)
        if np.any((s_arr <= 0) | (s_arr > 1)):
            raise DomainError("left limit needs s in (0, 1]")
        return self.quantile_fn.left_limit(s_arr)

    def cum_price(self, s):
        return tail_integral(self.quantile_fn, 1.0 - np.asarray(s, dtype=float))

    def residual_price(self, t):
        return self.quantile_fn.cumulative(1.0 - np.asarray(t, dtype=float))

    def to_dict(self) -> dict:
        return {"type": "discrete", "quantile": self.quantile_fn.to_dict()}


SdfModel = Union[LogNormalSdf, DiscreteSdf]


def sdf_from_dict(d: dict) -> SdfModel:
    kind = d.get("type")
    if kind == "lognormal":
        extra = set(d) - {"type", "mu", "sigma"}
        if extra:
            raise ValueError(f"unknown fields in lognormal sdf: {sorted(extra)}")
        return LogNormalSdf(float(d["mu"]), float(d["sigma"]))
    if kind == "discrete":
        extra = set(d) - {"type", "quantile"}
        if extra:
            raise ValueError(f"unknown fields in discrete sdf: {sorted(extra)}")
        return DiscreteSdf(StepQuantile.from_dict(d["quantile"]))
    raise ValueError(f"unknown sdf type {kind!r}")


def sdf_quantile(m: SdfModel, s):
    return m.quantile(s)


def sdf_quantile_leftlim(m: SdfModel, s):
    return m.quantile_leftlim(s)


def moments(m: SdfModel) -> tuple[float, float, float]:
    return m.moments()


def tail_averages(m: SdfModel, p: float) -> tuple[float, float]:
    return m.tail_averages(p)
