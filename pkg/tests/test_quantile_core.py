import numpy as np
import pytest
from hypothesis import given, strategies as st

from icxbeat.quantile_core import (
    DomainError,
    StepFunction,
    StepQuantile,
    expected_upside,
    icx_dominates,
    mean,
    realize_payoff,
    refine_grid,
    second_moment,
    tail_integral,
    union_breakpoints,
    variance,
)
from strategies import step_quantiles, two_point


class TestConstruction:
    def test_rejects_decreasing_values(self):
        with pytest.raises(ValueError):
            StepQuantile([0, 0.5, 1], [2.0, 1.0])

    @pytest.mark.parametrize("bp", [[0.1, 1.0], [0.0, 0.9], [0.0, 0.5, 0.5, 1.0]])
    def test_rejects_bad_breakpoints(self, bp):
        with pytest.raises(ValueError):
            StepFunction(bp, [1.0] * (len(bp) - 1))

    def test_rejects_length_mismatch_and_nan(self):
        with pytest.raises(ValueError):
            StepFunction([0, 1], [1.0, 2.0])
        with pytest.raises(ValueError):
            StepFunction([0, 1], [np.nan])

    def test_dict_round_trip_and_unknown_fields(self):
        Q = two_point(1.0, 3.0, 0.25)
        assert StepQuantile.from_dict(Q.to_dict()).to_dict() == Q.to_dict()
        with pytest.raises(ValueError, match="unknown"):
            StepQuantile.from_dict({**Q.to_dict(), "extra": 1})

    def test_from_atoms_sorts_and_merges(self):
        Q = StepQuantile.from_atoms([3.0, 1.0, 3.0], [0.25, 0.5, 0.25])
        assert Q.breakpoints.tolist() == [0.0, 0.5, 1.0]
        assert Q.values.tolist() == [1.0, 3.0]
        with pytest.raises(ValueError):
            StepQuantile.from_atoms([1.0, 2.0], [0.5, 0.4])

    def test_values_are_read_only(self):
        Q = StepQuantile.constant(1.0)
        with pytest.raises(ValueError):
            Q.values[0] = 2.0


class TestEvaluation:
    def test_right_continuous_lookup(self):
        Q = two_point(1.0, 3.0)
        assert Q(0.0) == 1.0
        assert Q(0.4999) == 1.0
        assert Q(0.5) == 3.0
        assert Q(1.0) == 3.0  # Q(1) := Q(1-)
        assert Q.left_limit(0.5) == 1.0
        assert Q.left_limit(1.0) == 3.0

    def test_tail_integral_values(self):
        Q = two_point(1.0, 3.0)
        assert tail_integral(Q, 0.0) == pytest.approx(2.0, abs=1e-15)
        assert tail_integral(Q, 0.5) == pytest.approx(1.5, abs=1e-15)
        assert tail_integral(Q, 0.75) == pytest.approx(0.75, abs=1e-15)
        assert tail_integral(Q, 1.0) == 0.0
        np.testing.assert_allclose(tail_integral(Q, [0.25, 0.5]), [1.75, 1.5], atol=1e-15)

    @pytest.mark.parametrize("t", [-0.1, 1.1, np.nan])
    def test_tail_integral_domain(self, t):
        with pytest.raises(DomainError):
            tail_integral(StepQuantile.constant(1.0), t)

    def test_expected_upside_domain(self):
        Q = two_point(1.0, 3.0)
        assert expected_upside(Q, 0.5) == pytest.approx(1.5)
        with pytest.raises(DomainError):
            expected_upside(Q, 1.0)

    def test_moments_two_point(self):
        Q = two_point(1.0, 3.0, 0.25)
        assert mean(Q) == pytest.approx(2.5)
        assert second_moment(Q) == pytest.approx(0.25 + 0.75 * 9)
        assert variance(Q) == pytest.approx(0.25 * 0.75 * 4)

    def test_realize_payoff_is_antitone_in_u(self):
        Q = two_point(1.0, 3.0)
        assert realize_payoff(Q, 0.1) == 3.0
        assert realize_payoff(Q, 0.9) == 1.0
        for u in (0.0, 1.0):
            with pytest.raises(DomainError):
                realize_payoff(Q, u)


class TestIcx:
    def test_spread_dominates_its_mean(self):
        assert icx_dominates(two_point(0.0, 2.0), StepQuantile.constant(1.0))
        assert not icx_dominates(StepQuantile.constant(1.0), two_point(0.0, 2.0))

    def test_upward_shift(self):
        Q0 = two_point(0.0, 2.0)
        assert icx_dominates(Q0.shift(0.1), Q0)
        assert not icx_dominates(Q0.shift(-0.1), Q0)

    def test_tolerance(self):
        Q0 = two_point(0.0, 2.0)
        assert icx_dominates(Q0.shift(-1e-10), Q0, tol=1e-9)
        assert not icx_dominates(Q0.shift(-1e-8), Q0, tol=1e-9)


def test_refine_grid_drops_slivers():
    base = np.linspace(0, 1, 2001)
    g = refine_grid(base, [0.0, 0.7, 1.0])
    assert 0.7 in g
    assert np.min(np.diff(g)) > 1e-6
    assert len(g) == 2001


def test_union_breakpoints():
    u = union_breakpoints(two_point(0, 1, 0.3), two_point(0, 1, 0.6))
    assert u.tolist() == [0.0, 0.3, 0.6, 1.0]


# --- properties -------------------------------------------------------------

@given(step_quantiles(), st.floats(0, 1))
def test_tail_integral_matches_dense_quadrature(Q, t):
    s = np.linspace(t, 1, 20001)
    mid = 0.5 * (s[1:] + s[:-1])
    approx = float(np.sum(Q(mid) * np.diff(s)))
    assert tail_integral(Q, t) == pytest.approx(approx, abs=2e-3 * (1 + np.max(np.abs(Q.values))))


@given(step_quantiles())
def test_tail_integral_is_concave(Q):
    t = np.linspace(0, 1, 257)
    g = tail_integral(Q, t)
    second = g[2:] - 2 * g[1:-1] + g[:-2]
    assert np.all(second <= 1e-12)


@given(step_quantiles())
def test_icx_reflexive(Q):
    assert icx_dominates(Q, Q)


@given(step_quantiles(), step_quantiles(), step_quantiles())
def test_icx_transitive(A, B, C):
    if icx_dominates(A, B, 0.0) and icx_dominates(B, C, 0.0):
        assert icx_dominates(A, C, 1e-12)


@given(step_quantiles(), st.floats(-2, 2))
def test_shift_moves_mean_and_keeps_variance(Q, c):
    assert mean(Q.shift(c)) == pytest.approx(mean(Q) + c, abs=1e-12)
    assert variance(Q.shift(c)) == pytest.approx(variance(Q), abs=1e-12)


@given(step_quantiles())
def test_to_grid_preserves_tails_at_grid_points(Q):
    grid = refine_grid(np.linspace(0, 1, 17), [])
    G = Q.to_grid(grid)
    np.testing.assert_allclose(tail_integral(G, grid), tail_integral(Q, grid), atol=1e-12)
    assert icx_dominates(Q, G, 1e-12)


@given(step_quantiles())
def test_simplify_idempotent_and_equivalent(Q):
    S = Q.simplify()
    assert S.simplify().to_dict() == S.to_dict()
    s = np.linspace(0, 1, 101)
    np.testing.assert_array_equal(S(s), Q(s))


@given(step_quantiles(max_cells=5), st.lists(st.floats(0, 1), max_size=40))
def test_refine_grid_valid(Q, pts):
    g = refine_grid(pts + [0.0, 1.0], Q.breakpoints)
    assert g[0] == 0.0 and g[-1] == 1.0
    assert set(Q.breakpoints.tolist()) <= set(g.tolist())
    assert np.all(np.diff(g) > 1e-12)
