"""Convex and concave envelopes of functions sampled on a grid of [0, 1].

The envelope of a sampled function is the lower (upper) hull of its graph
points, computed with Andrew's monotone chain in a single left-to-right pass.
Collinear points are dropped so hull segments are maximal.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quantile_core import DomainError, StepFunction

CROSS_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class SampledFunction:
    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise ValueError("grid and values must be 1-d arrays of equal length")
        if len(grid) < 2:
            raise DomainError("need at least one cell (two grid points)")
        if grid[0] != 0.0 or grid[-1] != 1.0 or np.any(np.diff(grid) <= 0):
            raise ValueError("grid must increase strictly from 0 to 1")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")


@dataclass(frozen=True, eq=False)
class EnvelopeResult:
    """Envelope on the grid of the input function.

    ``slopes`` is a step function whose breakpoints are the hull vertices;
    its value on a hull segment is the segment's slope, so evaluating it
    gives the right derivative of the envelope.
    """

    hull_indices: np.ndarray
    slopes: StepFunction
    values: np.ndarray
    grid: np.ndarray
    convex: bool


def _lower_hull(x: np.ndarray, y: np.ndarray) -> list[int]:
    hull: list[int] = []
    xs = x.tolist()
    ys = y.tolist()
    for i in range(len(xs)):
        xi, yi = xs[i], ys[i]
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            dxa, dya = xs[a] - xs[o], ys[a] - ys[o]
            dxb, dyb = xi - xs[o], yi - ys[o]
            cross = dxa * dyb - dya * dxb
            scale = abs(dxa * dyb) + abs(dya * dxb)
            # a is not strictly below the chord o->i: drop it
            if cross <= CROSS_RTOL * scale:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def convex_envelope(f: SampledFunction) -> EnvelopeResult:
    """Greatest convex function below ``f`` on its grid."""
    idx = np.array(_lower_hull(f.grid, f.values), dtype=int)
    hx, hy = f.grid[idx], f.values[idx]
    slopes = StepFunction(hx, np.diff(hy) / np.diff(hx))
    values = np.interp(f.grid, hx, hy)
    values[idx] = hy
    return EnvelopeResult(idx, slopes, values, f.grid, convex=True)


def concave_envelope(f: SampledFunction) -> EnvelopeResult:
    """Smallest concave function above ``f`` on its grid."""
    low = convex_envelope(SampledFunction(f.grid, -f.values))
    slopes = StepFunction(low.slopes.breakpoints, -low.slopes.values)
    return EnvelopeResult(low.hull_indices, slopes, -low.values, f.grid, convex=False)


def envelope_slope_at(e: EnvelopeResult, s):
    """Right derivative of the envelope at ``s`` in [0, 1)."""
    s_arr = np.asarray(s, dtype=float)
    if np.any((s_arr < 0) | (s_arr >= 1)):
        raise DomainError("s must lie in [0, 1)")
    return e.slopes(s_arr)


def cell_slopes(e: EnvelopeResult) -> np.ndarray:
    """Envelope slope on every cell of the underlying grid."""
    return e.slopes(e.grid[:-1])
