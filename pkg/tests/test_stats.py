"""
Tests for chi-squared functions, the consistency factor, trimming selection
and error metrics.
"""
import math
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import chi2

from src.errors import InvalidArgumentError
from src.stats import (
    chi2_cdf,
    chi2_quantile,
    compute_metrics,
    consistency_factor,
    lowest_fraction_indices,
)


class TestChi2Cdf:
    """Test the closed-form chi-squared CDFs."""

    def test_zero_is_lower_support_bound(self):
        assert chi2_cdf(0, 1) == 0.0
        assert chi2_cdf(0, 3) == 0.0

    def test_dof1_at_normal_975_quantile_squared(self):
        assert chi2_cdf(3.8415, 1) == pytest.approx(0.95, abs=1e-4)

    def test_dof3_closed_form_example(self):
        assert chi2_cdf(0.4549, 3) == pytest.approx(0.0710, abs=1e-3)

    @pytest.mark.parametrize("dof", [1, 3])
    @pytest.mark.parametrize("x", [1e-6, 0.01, 0.4549, 1.0, 3.8415, 10.0, 40.0])
    def test_matches_scipy(self, x, dof):
        assert chi2_cdf(x, dof) == pytest.approx(chi2.cdf(x, dof), abs=1e-11)

    @pytest.mark.parametrize("dof", [1, 3])
    @pytest.mark.parametrize("x", [1e300, 1e308, sys.float_info.max])
    def test_huge_finite_x_is_one(self, x, dof):
        assert chi2_cdf(x, dof) == 1.0

    def test_rejects_negative_x(self):
        with pytest.raises(InvalidArgumentError):
            chi2_cdf(-0.1, 1)

    @pytest.mark.parametrize("dof", [0, 2, 4])
    def test_rejects_unsupported_dof(self, dof):
        with pytest.raises(InvalidArgumentError):
            chi2_cdf(1.0, dof)

    @given(st.floats(min_value=0.0, max_value=200.0), st.floats(min_value=0.0, max_value=10.0))
    def test_monotone_and_stochastically_ordered(self, x, dx):
        assert chi2_cdf(x, 1) >= chi2_cdf(x, 3)
        assert chi2_cdf(x + dx, 1) >= chi2_cdf(x, 1) - 1e-15
        assert chi2_cdf(x + dx, 3) >= chi2_cdf(x, 3) - 1e-15


class TestChi2Quantile:
    """Test the one-degree-of-freedom quantile."""

    def test_zero_probability(self):
        assert chi2_quantile(0, 1) == 0.0

    def test_median(self):
        assert chi2_quantile(0.5, 1) == pytest.approx(0.4549, abs=1e-3)

    def test_95_percent(self):
        assert chi2_quantile(0.95, 1) == pytest.approx(3.8415, abs=1e-3)

    @pytest.mark.parametrize("p", np.round(np.arange(0.01, 1.0, 0.01), 2))
    def test_round_trip(self, p):
        assert abs(chi2_cdf(chi2_quantile(p, 1), 1) - p) < 1e-9

    @pytest.mark.parametrize("p", [-0.1, 1.0, 1.5])
    def test_rejects_out_of_range(self, p):
        with pytest.raises(InvalidArgumentError):
            chi2_quantile(p, 1)

    def test_rejects_dof3(self):
        with pytest.raises(InvalidArgumentError):
            chi2_quantile(0.5, 3)


class TestConsistencyFactor:
    """Test the variance correction for trimmed samples."""

    def test_no_trimming_is_identity(self):
        factor = consistency_factor(1.0)
        assert factor.c == 1.0

    def test_half_trimming(self):
        assert consistency_factor(0.5).c == pytest.approx(7.04, abs=0.05)

    def test_95_percent(self):
        assert consistency_factor(0.95).c == pytest.approx(1.318, abs=0.01)

    @pytest.mark.parametrize("alpha", [0.5, 0.95])
    def test_matches_chi2_oracle(self, alpha):
        eta_sq = chi2.ppf(alpha, 1)
        oracle = alpha / chi2.cdf(eta_sq, 3)
        factor = consistency_factor(alpha)
        assert factor.c == pytest.approx(oracle, rel=1e-6)
        assert factor.eta_sq == pytest.approx(eta_sq, rel=1e-8)

    def test_c_uses_own_cdf(self):
        factor = consistency_factor(0.75)
        assert factor.c == factor.alpha / chi2_cdf(factor.eta_sq, 3)

    def test_monotone_decreasing(self):
        alphas = np.linspace(0.05, 1.0, 40)
        values = [consistency_factor(a).c for a in alphas]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert min(values) >= 1.0

    @pytest.mark.parametrize("alpha", [0.0, -0.5, 1.01])
    def test_rejects_invalid_alpha(self, alpha):
        with pytest.raises(InvalidArgumentError):
            consistency_factor(alpha)


class TestLowestFractionIndices:
    """Test h-subset selection."""

    def test_full_set(self):
        assert lowest_fraction_indices([3, 1, 2], 1.0).tolist() == [0, 1, 2]

    def test_ceiling_rule(self):
        assert lowest_fraction_indices([3, 1, 2], 0.5).tolist() == [1, 2]

    def test_ties_broken_by_index(self):
        assert lowest_fraction_indices([5, 5, 5, 5], 0.5).tolist() == [0, 1]

    def test_float_roundoff_does_not_add_a_point(self):
        assert lowest_fraction_indices(np.arange(10.0), 0.9).size == 9

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidArgumentError):
            lowest_fraction_indices([1.0, np.nan, 2.0], 0.5)

    @settings(max_examples=60)
    @given(
        st.lists(st.floats(min_value=-1e6, max_value=1e6), min_size=1, max_size=60),
        st.floats(min_value=0.01, max_value=1.0),
    )
    def test_size_and_separation(self, values, alpha):
        d = np.array(values)
        chosen = lowest_fraction_indices(d, alpha)
        assert chosen.size == min(max(math.ceil(alpha * d.size - 1e-9), 1), d.size)
        excluded = np.setdiff1d(np.arange(d.size), chosen)
        if excluded.size:
            assert d[excluded].min() >= d[chosen].max()


class TestComputeMetrics:

    def test_perfect_prediction(self):
        metrics = compute_metrics([1.0, 2.0], [1.0, 2.0])
        assert metrics.rmse == 0.0
        assert metrics.mae == 0.0

    def test_symmetric_residuals(self):
        metrics = compute_metrics([0.0, 0.0], [1.0, -1.0])
        assert metrics.rmse == pytest.approx(1.0)
        assert metrics.mae == pytest.approx(1.0)

    def test_single_large_residual(self):
        metrics = compute_metrics([0.0, 0.0, 0.0, 0.0], [3.0, 0.0, 0.0, 0.0])
        assert metrics.rmse == pytest.approx(1.5)
        assert metrics.mae == pytest.approx(0.75)
        assert metrics.n_test == 4

    def test_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            compute_metrics([1.0], [1.0, 2.0])

    def test_empty(self):
        with pytest.raises(InvalidArgumentError):
            compute_metrics([], [])

    @given(st.lists(st.floats(min_value=-1e3, max_value=1e3), min_size=1, max_size=50))
    def test_mae_never_exceeds_rmse(self, residuals):
        metrics = compute_metrics(np.zeros(len(residuals)), residuals)
        assert metrics.mae <= metrics.rmse + 1e-9
