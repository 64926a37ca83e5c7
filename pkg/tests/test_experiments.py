#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Unit tests for the Monte Carlo layer: sampling, percolation
probabilities, threshold bisection and exponent fits.
"""

import math
import os
from fractions import Fraction

import pytest

from perclab.density import bracket_exponents
from perclab.errors import BracketError, UsageError
from perclab.experiments import (
    ThresholdEstimate,
    TrialConfig,
    estimate_pc,
    fit_exponent,
    fit_power_law,
    initial_bracket,
    percolation_curve,
    percolation_probability,
    sample_gnp,
    wilson_interval,
    witness_success_rate,
)
from perclab.parallel import worker_map


def list_map(func, items):
    """Eager map-compatible executor."""
    return [func(item) for item in items]


class TestSampleGnp:
    """Tests for sample_gnp function."""

    def test_deterministic(self):
        """The same (seed, trial) gives the same graph."""
        assert sample_gnp(40, 0.2, seed=3, trial=5) == sample_gnp(40, 0.2, seed=3, trial=5)

    def test_trials_differ(self):
        """Different trials draw from different streams."""
        assert sample_gnp(40, 0.2, seed=3, trial=0) != sample_gnp(40, 0.2, seed=3, trial=1)

    def test_coupled_across_p(self):
        """The sample at p is a subgraph of the sample at p' > p."""
        for trial in range(5):
            small = sample_gnp(50, 0.05, seed=1, trial=trial)
            large = sample_gnp(50, 0.2, seed=1, trial=trial)
            assert small.is_subgraph_of(large)

    def test_extremes(self):
        """p = 0 is edgeless and p = 1 complete."""
        assert sample_gnp(10, 0.0, seed=0).m == 0
        assert sample_gnp(10, 1.0, seed=0).is_complete()

    def test_tiny_n(self):
        """n < 2 gives a graph without edges."""
        assert sample_gnp(1, 0.5, seed=0).n == 1
        assert sample_gnp(0, 0.5, seed=0).n == 0

    def test_invalid_p(self):
        """p outside [0, 1] is rejected."""
        with pytest.raises(UsageError):
            sample_gnp(10, 1.5, seed=0)

    def test_negative_seed(self):
        """Seeds must be nonnegative."""
        with pytest.raises(UsageError):
            sample_gnp(10, 0.5, seed=-1)


class TestTrialConfig:
    """Tests for TrialConfig validation."""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": -1, "t": 4, "p": 0.5, "trials": 1},
            {"n": 10, "t": 1, "p": 0.5, "trials": 1},
            {"n": 10, "t": 4, "p": -0.1, "trials": 1},
            {"n": 10, "t": 4, "p": 0.5, "trials": 0},
        ],
    )
    def test_invalid(self, kwargs):
        """Each bad field is a usage error."""
        with pytest.raises(UsageError):
            TrialConfig(**kwargs)


class TestWilsonInterval:
    """Tests for wilson_interval function."""

    def test_contains_estimate(self):
        """The interval brackets the sample proportion."""
        lo, hi = wilson_interval(30, 100)
        assert lo < 0.3 < hi

    def test_boundaries(self):
        """All failures pin the lower end, all successes the upper end."""
        assert wilson_interval(0, 10)[0] == 0.0
        assert wilson_interval(10, 10)[1] == 1.0

    def test_known_value(self):
        """50/100 at 95% is about [0.404, 0.596]."""
        lo, hi = wilson_interval(50, 100)
        assert lo == pytest.approx(0.4038, abs=1e-3)
        assert hi == pytest.approx(0.5962, abs=1e-3)

    def test_no_trials(self):
        """Zero trials carry no information."""
        assert wilson_interval(0, 0) == (0.0, 1.0)


class TestPercolationProbability:
    """Tests for percolation_probability and percolation_curve."""

    def test_complete_samples(self):
        """p = 1 always percolates."""
        estimate = percolation_probability(TrialConfig(n=8, t=4, p=1.0, trials=3))
        assert estimate.fraction == Fraction(1)
        assert estimate.to_dict()["fraction"] == "1/1"

    def test_empty_samples(self):
        """p = 0 never percolates."""
        estimate = percolation_probability(TrialConfig(n=8, t=2, p=0.0, trials=3))
        assert estimate.successes == 0

    def test_executor_invariance(self):
        """Builtin map and an eager executor count the same trials."""
        cfg = TrialConfig(n=25, t=2, p=0.12, trials=15, master_seed=4)
        assert percolation_probability(cfg) == percolation_probability(cfg, executor=list_map)

    def test_curve_is_monotone(self):
        """Coupled sampling makes the success count nondecreasing in p."""
        grid = [0.02, 0.05, 0.1, 0.2, 0.4]
        points = percolation_curve(25, 2, grid, trials=12, seed=2)
        successes = [pt.successes for pt in points]
        assert successes == sorted(successes)
        assert [pt.p for pt in points] == grid


class TestEstimatePc:
    """Tests for the threshold bisection."""

    def test_initial_bracket(self):
        """The padded bracket for t = 4 straddles both exponents."""
        lo, hi = initial_bracket(1000, 4)
        assert lo == pytest.approx(1000 ** (-4 / 5) / 10)
        assert hi == pytest.approx(min(1.0, 10 * 1000 ** (-10 / 13)))
        assert lo < hi

    def test_small_t_bracket(self):
        """t < 4 falls back to the generic bound and p = 1."""
        lo, hi = initial_bracket(100, 2)
        assert lo == pytest.approx(100 ** (-3 / 2) / 10)
        assert hi == 1.0

    def test_bisection(self):
        """The bracket straddles the target and meets the tolerance."""
        estimate = estimate_pc(30, 2, trials_per_step=10, tolerance=0.2, seed=1)
        assert estimate.p_lo < estimate.p_hat < estimate.p_hi
        assert estimate.p_hat == pytest.approx(math.sqrt(estimate.p_lo * estimate.p_hi))
        assert estimate.p_hi - estimate.p_lo < 0.2 * estimate.p_hat
        outcomes = dict(estimate.history)
        assert Fraction(outcomes[estimate.p_hi], 10) >= Fraction(1, 2)
        assert Fraction(outcomes[estimate.p_lo], 10) < Fraction(1, 2)

    def test_reproducible(self):
        """Same arguments, same estimate."""
        first = estimate_pc(30, 2, trials_per_step=8, tolerance=0.3, seed=9)
        second = estimate_pc(30, 2, trials_per_step=8, tolerance=0.3, seed=9, executor=list_map)
        assert first == second

    def test_too_small_n(self):
        """n < t+2 cannot be bracketed."""
        with pytest.raises(BracketError):
            estimate_pc(5, 4, trials_per_step=5, tolerance=0.1)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"tolerance": 0.0},
            {"trials_per_step": 0},
            {"target_prob": Fraction(0)},
            {"target_prob": Fraction(3, 2)},
        ],
    )
    def test_invalid_arguments(self, kwargs):
        """Tolerance, trial count and target are validated."""
        args = {"n": 30, "t": 2, "trials_per_step": 5, "tolerance": 0.1}
        args.update(kwargs)
        with pytest.raises(UsageError):
            estimate_pc(**args)

    def test_to_dict(self):
        """Threshold documents render the target as a rational."""
        estimate = ThresholdEstimate(
            n=10, t=4, p_lo=0.1, p_hi=0.2, p_hat=math.sqrt(0.02),
            target_prob=Fraction(1, 2), trials_per_step=5, seed=0, history=[(0.1, 1), (0.2, 4)],
        )
        doc = estimate.to_dict()
        assert doc["target_prob"] == "1/2"
        assert doc["history"] == [{"p": 0.1, "successes": 1}, {"p": 0.2, "successes": 4}]


class TestExponentFit:
    """Tests for power-law fits."""

    def test_exact_power_law(self):
        """Points on p = 2·n^{-3/4} give slope -3/4 and zero residual."""
        points = [(n, 2 * n ** -0.75) for n in (100, 200, 400, 800)]
        fit = fit_power_law(points, t=4)
        assert fit.slope == pytest.approx(-0.75)
        assert fit.intercept == pytest.approx(math.log(2))
        assert fit.residual == pytest.approx(0.0, abs=1e-12)
        assert fit.brackets["upper"] == Fraction(-10, 13)
        assert fit.to_dict()["brackets"]["sharp"] == "-10/13"

    def test_needs_three_sizes(self):
        """Two distinct n cannot be fitted."""
        with pytest.raises(UsageError):
            fit_power_law([(100, 0.1), (200, 0.05), (200, 0.06)])

    def test_positive_values(self):
        """log needs positive p."""
        with pytest.raises(UsageError):
            fit_power_law([(100, 0.1), (200, 0.0), (400, 0.02)])

    def test_no_brackets_for_small_t(self):
        """t < 4 has no theory brackets."""
        fit = fit_power_law([(10, 0.5), (20, 0.3), (40, 0.2)], t=2)
        assert fit.brackets == {}

    def test_fit_exponent_rejects_mixed_t(self):
        """Estimates for different t cannot share a fit."""
        def make(n, t):
            return ThresholdEstimate(n, t, 0.1, 0.2, 0.14, Fraction(1, 2), 5, 0)

        with pytest.raises(UsageError):
            fit_exponent([make(100, 4), make(200, 4), make(400, 5)])

    def test_fit_exponent(self):
        """fit_exponent uses p_hat and carries t."""
        def make(n):
            return ThresholdEstimate(n, 4, 0.0, 0.0, 3 * n ** -0.8, Fraction(1, 2), 5, 0)

        fit = fit_exponent([make(n) for n in (50, 100, 200)])
        assert fit.t == 4
        assert fit.slope == pytest.approx(-0.8)

    @pytest.mark.slow
    def test_exponent_recovery_t4(self):
        """Fitted slope for t = 4 over n = 200, 400, 800 lands in the widened theory bracket."""
        with worker_map(max(1, min(4, os.cpu_count() or 1))) as executor:
            estimates = [estimate_pc(n, 4, 200, 0.05, seed=1, executor=executor) for n in (200, 400, 800)]
        fit = fit_exponent(estimates)
        brackets = bracket_exponents(4)
        assert fit.brackets == brackets
        # finite-size window: lower bound -0.05, upper bound +0.08
        assert float(brackets["lower"]) - 0.05 <= fit.slope <= float(brackets["upper"]) + 0.08


class TestWitnessRate:
    """Tests for witness_success_rate function."""

    def test_sparse_samples_verify(self):
        """Very sparse samples hold no K_{2,3} and are certified."""
        rate = witness_success_rate(60, 4, 0.01, trials=5, seed=0)
        assert rate.verified == 5
        assert rate.rate == 1
        assert rate.unexplained == 0
        assert rate.to_dict()["rate"] == "1/1"

    def test_general_t(self):
        """t = 5 uses the family witness."""
        rate = witness_success_rate(60, 5, 0.01, trials=3, seed=0, executor=list_map)
        assert rate.trials == 3
        assert rate.verified == 3

    def test_invalid(self):
        """t < 4, no trials and bad p are rejected."""
        with pytest.raises(UsageError):
            witness_success_rate(60, 3, 0.01, trials=3)
        with pytest.raises(UsageError):
            witness_success_rate(60, 4, 0.01, trials=0)
        with pytest.raises(UsageError):
            witness_success_rate(60, 4, 2.0, trials=3)

    @pytest.mark.slow
    def test_acceptance_t4(self):
        """n = 500, p = 0.1·n^{-10/13}: at least 95% of 100 samples certified."""
        n = 500
        rate = witness_success_rate(n, 4, 0.1 * n ** (-10 / 13), trials=100, seed=0)
        assert rate.verified >= 95
        assert rate.unexplained == 0

    @pytest.mark.slow
    def test_acceptance_t5(self):
        """n = 500, p = 0.1·n^{-5/7}: at least 95% of 100 samples certified."""
        n = 500
        rate = witness_success_rate(n, 5, 0.1 * n ** (-5 / 7), trials=100, seed=0)
        assert rate.verified >= 95
