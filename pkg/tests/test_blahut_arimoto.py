"""Tests for the discretized channel builder and the cost-constrained BA solver."""

import numpy as np
import pytest

from awcn import (
    ChannelParams,
    DiscretizedChannel,
    ba_capacity_at_power,
    ba_fixed_multiplier,
    discretize_awcn,
    discretize_inputs,
    lb_epi,
    mi_antipodal,
    mutual_information,
    ub_cpuc,
    ub_genie,
)

# 1 - H2(0.11) in nats, computed with mpmath at 30 digits.
BSC_CAPACITY = 0.346631843641279157330918836862


def bsc(eps: float) -> DiscretizedChannel:
    return DiscretizedChannel(
        inputs=np.array([-1.0, 1.0]),
        output_edges=np.array([-np.inf, 0.0, np.inf]),
        transition=np.array([[1.0 - eps, eps], [eps, 1.0 - eps]]),
        cost=np.array([1.0, 1.0]),
    )


def small_awcn(gamma=1.0, m=41, b=301) -> DiscretizedChannel:
    return discretize_awcn(ChannelParams.from_gamma(gamma), m_inputs=m, b_outputs=b)


def test_discretize_rows_are_stochastic():
    ch = small_awcn()
    sums = ch.transition.sum(axis=1)
    assert np.max(np.abs(sums - 1.0)) < 1e-15
    assert np.all(ch.transition >= 0.0)


def test_discretize_shapes_and_cost():
    ch = discretize_awcn(ChannelParams.from_gamma(10.0), m_inputs=21, b_outputs=50)
    # b_outputs interior bins plus the two unbounded edge bins.
    assert ch.transition.shape == (21, 52)
    assert ch.output_edges[0] == -np.inf and ch.output_edges[-1] == np.inf
    np.testing.assert_array_equal(ch.cost, ch.inputs**2)
    assert ch.inputs[0] == pytest.approx(-4.0 * np.sqrt(10.0), rel=1e-15)


def test_discretize_single_input_half_bins():
    # One input at 0 with a single finite edge at 0 splits the noise law
    # into its two halves.
    ch = discretize_inputs([0.0], [0.0], lam=1.0)
    np.testing.assert_allclose(ch.transition, [[0.5, 0.5]], atol=1e-15)


def test_discretize_symmetry():
    ch = small_awcn()
    # Negating the input mirrors the output row (up to the ~ulp residual that
    # the row normalization folds into the largest bin).
    np.testing.assert_allclose(
        ch.transition, ch.transition[::-1, ::-1], rtol=0.0, atol=1e-14
    )


def test_discretized_channel_validation():
    with pytest.raises(ValueError):
        DiscretizedChannel(
            inputs=np.array([1.0, -1.0]),
            output_edges=np.array([-np.inf, 0.0, np.inf]),
            transition=np.full((2, 2), 0.5),
            cost=np.array([1.0, 1.0]),
        )
    with pytest.raises(ValueError):
        DiscretizedChannel(
            inputs=np.array([-1.0, 1.0]),
            output_edges=np.array([-np.inf, 0.0, np.inf]),
            transition=np.array([[0.7, 0.7], [0.5, 0.5]]),
            cost=np.array([1.0, 1.0]),
        )
    with pytest.raises(ValueError):
        DiscretizedChannel(
            inputs=np.array([-1.0, 1.0]),
            output_edges=np.array([-np.inf, 0.0, np.inf]),
            transition=np.full((2, 2), 0.5),
            cost=np.array([2.0, 2.0]),
        )
    with pytest.raises(ValueError):
        discretize_awcn(ChannelParams.from_gamma(1.0), m_inputs=1)
    with pytest.raises(ValueError):
        discretize_awcn(ChannelParams(lam=1.0, power=0.0))


def test_mutual_information_closed_forms():
    uniform = np.array([0.5, 0.5])
    w_bsc = bsc(0.11).transition
    assert mutual_information(uniform, w_bsc) == pytest.approx(BSC_CAPACITY, abs=1e-12)
    ident = np.eye(2)
    assert mutual_information(uniform, ident) == pytest.approx(np.log(2.0), rel=1e-14)
    indep = np.array([[0.3, 0.7], [0.3, 0.7]])
    assert mutual_information(uniform, indep) == pytest.approx(0.0, abs=1e-15)


def test_ba_bsc_capacity():
    sol = ba_fixed_multiplier(bsc(0.11), s=0.0, tol=1e-10)
    assert sol.converged
    assert sol.rate == pytest.approx(BSC_CAPACITY, abs=1e-9)
    np.testing.assert_allclose(sol.input_dist, [0.5, 0.5], atol=1e-9)


def test_ba_bsc_capacity_from_skewed_start():
    sol = ba_fixed_multiplier(
        bsc(0.2), s=0.0, tol=1e-12, init=np.array([0.95, 0.05])
    )
    p = 0.2
    cap = np.log(2.0) + p * np.log(p) + (1 - p) * np.log(1 - p)
    assert sol.converged
    assert sol.rate == pytest.approx(cap, abs=1e-10)


def test_ba_objective_trace_is_nondecreasing():
    trace = []
    ba_fixed_multiplier(small_awcn(), s=0.1, tol=1e-8, trace=trace)
    assert len(trace) >= 2
    assert np.min(np.diff(trace)) > -1e-12


def test_ba_rate_is_recomputable_from_dist():
    ch = small_awcn()
    sol = ba_fixed_multiplier(ch, s=0.2, tol=1e-8)
    assert sol.rate == pytest.approx(
        mutual_information(sol.input_dist, ch.transition), abs=1e-12
    )
    assert sol.avg_cost == pytest.approx(float(sol.input_dist @ ch.cost), abs=1e-12)


def test_ba_duality_gap_certifies_rate():
    # A tol-certified solve at s=0 is within tol of the true maximum, so two
    # runs at different tolerances agree to the looser one.  The gap decays
    # like 1/iterations here, so the tight run stays modest.
    ch = small_awcn()
    loose = ba_fixed_multiplier(ch, s=0.0, tol=1e-3)
    tight = ba_fixed_multiplier(ch, s=0.0, tol=1e-5)
    assert loose.converged and tight.converged
    assert tight.rate >= loose.rate - 1e-12
    assert tight.rate - loose.rate < 1e-3


def test_ba_max_iter_returns_unconverged():
    sol = ba_fixed_multiplier(small_awcn(), s=0.0, tol=1e-12, max_iter=3)
    assert not sol.converged
    assert sol.iterations == 3


def test_ba_validation():
    with pytest.raises(ValueError):
        ba_fixed_multiplier(bsc(0.11), s=-0.5)
    with pytest.raises(ValueError):
        ba_fixed_multiplier(bsc(0.11), s=0.0, tol=0.0)


def test_ba_large_multiplier_collapses_to_cheapest_input():
    ch = small_awcn()
    sol = ba_fixed_multiplier(ch, s=1e6, tol=1e-8)
    assert sol.avg_cost < 1e-4
    assert sol.rate < 1e-3
    mid = np.argmin(np.abs(ch.inputs))
    assert sol.input_dist[mid] > 0.99


def test_ba_avg_cost_nonincreasing_in_multiplier():
    ch = small_awcn()
    costs = [
        ba_fixed_multiplier(ch, s, tol=1e-7).avg_cost
        for s in (0.0, 0.1, 0.3, 1.0, 3.0, 10.0)
    ]
    assert np.all(np.diff(costs) <= 1e-9)


def test_ba_optimal_dist_symmetric():
    ch = small_awcn()
    sol = ba_fixed_multiplier(ch, s=0.3, tol=1e-9)
    np.testing.assert_allclose(sol.input_dist, sol.input_dist[::-1], atol=1e-8)


def test_capacity_matches_power_budget():
    ch = small_awcn(gamma=1.0)
    sol = ba_capacity_at_power(ch, power=1.0)
    assert sol.converged
    assert sol.multiplier > 0.0
    assert abs(sol.avg_cost - 1.0) <= 5e-3
    assert 0.0 < sol.rate < ub_cpuc(ChannelParams.from_gamma(1.0)) + 0.01


def test_capacity_between_bounds_small_grid():
    # Even a coarse grid should land in the analytic sandwich with a little
    # discretization slack.
    cp = ChannelParams.from_gamma(1.0)
    ch = discretize_awcn(cp, m_inputs=101, b_outputs=1001)
    sol = ba_capacity_at_power(ch, power=cp.power)
    assert sol.rate >= lb_epi(cp) - 0.02
    assert sol.rate <= min(ub_genie(cp), ub_cpuc(cp)) + 1e-3


def test_capacity_inactive_constraint_returns_zero_multiplier():
    # All inputs cost at most 0.01, far inside a unit budget.
    ch = discretize_inputs(
        np.linspace(-0.1, 0.1, 21), np.linspace(-50.0, 50.0, 501), lam=1.0
    )
    sol = ba_capacity_at_power(ch, power=1.0)
    assert sol.multiplier == 0.0
    assert sol.avg_cost < 0.011


def test_capacity_antipodal_grid_recovers_closed_form():
    cp = ChannelParams.from_gamma(1.0)
    ch = discretize_inputs(
        np.array([-1.0, 1.0]), np.linspace(-50.0, 50.0, 2002), cp.lam
    )
    sol = ba_capacity_at_power(ch, power=1.0)
    # Binary antipodal inputs at full power: the solver must reproduce the
    # two-point rate up to output binning error.
    assert sol.rate == pytest.approx(mi_antipodal(cp), abs=1e-3)


def test_capacity_s_hint_agrees_with_default():
    ch = small_awcn(gamma=10.0)
    base = ba_capacity_at_power(ch, power=10.0)
    hinted = ba_capacity_at_power(ch, power=10.0, s_hint=base.multiplier)
    assert abs(hinted.avg_cost - 10.0) <= 0.05
    assert hinted.rate == pytest.approx(base.rate, abs=2e-3)


def test_capacity_output_span_insensitive_at_fixed_bin_width():
    # Doubling the covered output range while holding the bin width fixed
    # must not move the rate: the edge bins already capture the tails.
    cp = ChannelParams.from_gamma(10.0)
    a = discretize_awcn(cp, m_inputs=101, b_outputs=2001, output_span=200.0)
    b = discretize_awcn(cp, m_inputs=101, b_outputs=4002, output_span=400.0)
    ra = ba_capacity_at_power(a, power=cp.power).rate
    rb = ba_capacity_at_power(b, power=cp.power).rate
    assert abs(ra - rb) < 1e-3
