"""Step functions on [0, 1) and exact arithmetic on step quantile functions.

A step function is described by breakpoints ``0 = t_0 < t_1 < ... < t_k = 1``
and values ``v_1, ..., v_k`` with ``f(s) = v_i`` for ``s`` in ``[t_{i-1}, t_i)``.
Every integral of such a function is piecewise linear in its limits, so tail
integrals, moments and increasing-convex-order checks are all exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ICX_TOL = 1e-9


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


def _as_array(x: Iterable[float]) -> np.ndarray:
    arr = np.array(x, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Right-continuous piecewise-constant function on [0, 1)."""

    breakpoints: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        bp = _as_array(self.breakpoints)
        vals = _as_array(self.values)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        if bp.ndim != 1 or vals.ndim != 1:
            raise ValueError("breakpoints and values must be one-dimensional")
        if len(bp) != len(vals) + 1 or len(vals) == 0:
            raise ValueError("need len(breakpoints) == len(values) + 1 >= 2")
        if bp[0] != 0.0 or bp[-1] != 1.0:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if np.any(np.diff(bp) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, s):
        """Right-continuous lookup; ``f(1)`` is the left limit at 1."""
        s_arr = np.asarray(s, dtype=float)
        idx = np.searchsorted(self.breakpoints, s_arr, side="right") - 1
        idx = np.clip(idx, 0, len(self.values) - 1)
        out = self.values[idx]
        return float(out) if out.ndim == 0 else out

    def left_limit(self, s):
        """``f(s-)`` for ``s`` in (0, 1]."""
        s_arr = np.asarray(s, dtype=float)
        idx = np.searchsorted(self.breakpoints, s_arr, side="left") - 1
        idx = np.clip(idx, 0, len(self.values) - 1)
        out = self.values[idx]
        return float(out) if out.ndim == 0 else out

    def cumulative(self, s):
        """``int_0^s f(u) du``, exact and vectorised."""
        s_arr = np.clip(np.asarray(s, dtype=float), 0.0, 1.0)
        bp = self.breakpoints
        head = np.concatenate(([0.0], np.cumsum(self.values * self.widths)))
        idx = np.clip(np.searchsorted(bp, s_arr, side="right") - 1, 0, len(self.values) - 1)
        out = head[idx] + self.values[idx] * (s_arr - bp[idx])
        return float(out) if out.ndim == 0 else out

    def integral(self) -> float:
        return float(np.dot(self.values, self.widths))

    def cell_averages(self, grid: Sequence[float]) -> np.ndarray:
        """Average of ``f`` over each cell of ``grid`` (exact)."""
        grid = np.asarray(grid, dtype=float)
        return np.diff(self.cumulative(grid)) / np.diff(grid)

    def shift(self, c: float):
        return type(self)(self.breakpoints, self.values + c)

    def to_dict(self) -> dict:
        return {"breakpoints": [float(b) for b in self.breakpoints],
                "values": [float(v) for v in self.values]}

    @classmethod
    def from_dict(cls, d: dict):
        extra = set(d) - {"breakpoints", "values"}
        if extra:
            raise ValueError(f"unknown fields in step function: {sorted(extra)}")
        return cls(d["breakpoints"], d["values"])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(breakpoints={self.breakpoints.tolist()}, values={self.values.tolist()})"


@dataclass(frozen=True, eq=False)
class StepQuantile(StepFunction):
    """Quantile function of a discrete (or gridded) random variable.

    Values must be nondecreasing. ``Q(1)`` is taken to be ``Q(1-)``.
    """

    def __post_init__(self):
        super().__post_init__()
        if np.any(np.diff(self.values) < 0):
            raise ValueError("quantile values must be nondecreasing")

    @classmethod
    def constant(cls, c: float) -> "StepQuantile":
        return cls([0.0, 1.0], [c])

    @classmethod
    def from_atoms(cls, atoms: Sequence[float], probs: Sequence[float]) -> "StepQuantile":
        """Quantile of a discrete law with the given atoms and probabilities."""
        atoms = np.asarray(atoms, dtype=float)
        probs = np.asarray(probs, dtype=float)
        if atoms.shape != probs.shape or np.any(probs <= 0):
            raise ValueError("atoms and probs must align and probs must be positive")
        if not np.isclose(probs.sum(), 1.0, rtol=0, atol=1e-12):
            raise ValueError("probabilities must sum to one")
        order = np.argsort(atoms, kind="stable")
        cum = np.cumsum(probs[order])
        bp = np.concatenate(([0.0], cum[:-1], [1.0]))
        return cls(bp, atoms[order]).simplify()

    @property
    def top(self) -> float:
        """``Q(1) = Q(1-)``, the essential supremum."""
        return float(self.values[-1])

    @property
    def bottom(self) -> float:
        return float(self.values[0])

    def simplify(self) -> "StepQuantile":
        """Merge adjacent cells carrying the same value."""
        keep = np.concatenate(([True], np.diff(self.values) != 0))
        vals = self.values[keep]
        bp = np.concatenate((self.breakpoints[:-1][keep], [1.0]))
        return StepQuantile(bp, vals)

    def to_grid(self, grid: Sequence[float]) -> "StepQuantile":
        """Cell averages on ``grid``; tail integrals agree at grid points."""
        return StepQuantile(grid, np.maximum.accumulate(self.cell_averages(grid)))


def union_breakpoints(*fs: StepFunction) -> np.ndarray:
    return np.unique(np.concatenate([f.breakpoints for f in fs]))


def refine_grid(base: Sequence[float], keep: Sequence[float], tol: float = 1e-12) -> np.ndarray:
    """Union of two grids on [0, 1]; points of ``base`` closer than ``tol`` to a
    point of ``keep`` are dropped so no sliver cells appear."""
    base = np.asarray(base, dtype=float)
    keep = np.unique(np.asarray(keep, dtype=float))
    pos = np.clip(np.searchsorted(keep, base), 1, len(keep) - 1) if len(keep) > 1 else None
    if pos is None:
        near = np.abs(base - keep[0]) <= tol if len(keep) else np.zeros(len(base), bool)
    else:
        near = np.minimum(np.abs(base - keep[pos - 1]), np.abs(base - keep[pos])) <= tol
    return np.unique(np.concatenate([base[~near], keep]))


def tail_integral(Q: StepFunction, t):
    """``int_t^1 Q(s) ds``."""
    t_arr = np.asarray(t, dtype=float)
    if np.any((t_arr < 0) | (t_arr > 1)) or np.any(np.isnan(t_arr)):
        raise DomainError("t must lie in [0, 1]")
    out = Q.integral() - Q.cumulative(t_arr)
    return float(out) if np.ndim(out) == 0 else out


def expected_upside(Q: StepQuantile, q: float) -> float:
    """Unnormalised tail gain over the best ``1 - q`` fraction of outcomes."""
    if not 0.0 <= q < 1.0:
        raise DomainError("q must lie in [0, 1)")
    return tail_integral(Q, q)


def icx_dominates(Q: StepQuantile, Q0: StepQuantile, tol: float = DEFAULT_ICX_TOL) -> bool:
    """Whether ``Q`` dominates ``Q0`` in the increasing convex order.

    Both tail integrals are piecewise linear with kinks only at breakpoints,
    so it suffices to compare them on the union of breakpoints.
    """
    ts = union_breakpoints(Q, Q0)
    gap = tail_integral(Q, ts) - tail_integral(Q0, ts)
    return bool(np.all(gap >= -tol))


def mean(Q: StepFunction) -> float:
    return Q.integral()


def second_moment(Q: StepFunction) -> float:
    return float(np.dot(Q.values ** 2, Q.widths))


def variance(Q: StepFunction) -> float:
    m = mean(Q)
    # centred form avoids cancellation for nearly constant Q
    return float(np.dot((Q.values - m) ** 2, Q.widths))


def realize_payoff(Q: StepQuantile, u: float) -> float:
    """Payoff ``Q(1 - u)`` for a uniform draw ``u`` coupled with the SDF."""
    if not 0.0 < u < 1.0:
        raise DomainError("u must lie in (0, 1)")
    return Q(1.0 - u)
