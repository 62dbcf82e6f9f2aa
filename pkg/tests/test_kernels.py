"""
Tests for kernel evaluation, covariance matrices and their gradients.
"""
import math

import numpy as np
import pytest

from src.errors import InvalidArgumentError
from src.kernels import (
    KernelParams,
    KernelSpec,
    as_inputs,
    cov_matrix,
    cov_matrix_grads,
    kernel_eval,
    prior_variance,
)
from src.utils.kernel_models import KernelFamily, NoiseMode


def _random_params(rng) -> KernelParams:
    return KernelParams(
        log_signal_sd=rng.uniform(-1.0, 1.0),
        log_lengthscale=rng.uniform(-1.0, 1.0),
        log_noise_sd=rng.uniform(-3.0, -0.5),
    )


class TestKernelParams:

    def test_natural_round_trip(self):
        params = KernelParams.from_natural(2.0, 0.5, 0.1)
        assert params.signal_sd == pytest.approx(2.0)
        assert params.lengthscale == pytest.approx(0.5)
        assert params.noise_var == pytest.approx(0.01)
        assert KernelParams.from_array(params.to_array()) == params

    def test_rejects_non_positive(self):
        with pytest.raises(InvalidArgumentError):
            KernelParams.from_natural(1.0, 0.0, 0.1)

    def test_rejects_non_finite_log(self):
        with pytest.raises(InvalidArgumentError):
            KernelParams(0.0, math.nan, 0.0)

    def test_spec_accepts_string(self):
        assert KernelSpec("matern32").family == KernelFamily.MATERN32
        with pytest.raises(InvalidArgumentError):
            KernelSpec("rbf2")


class TestKernelEval:
    """Test single kernel evaluations."""

    def test_same_index_adds_noise(self, se_spec):
        params = KernelParams.from_natural(1.0, 1.0, 0.5)
        assert kernel_eval(se_spec, params, 0.3, 0.3, same_index=True) == pytest.approx(1.25)

    def test_duplicate_coordinates_without_index_identity(self, se_spec):
        params = KernelParams.from_natural(1.0, 1.0, 0.5)
        assert kernel_eval(se_spec, params, 0.3, 0.3, same_index=False) == pytest.approx(1.0)

    def test_se_unit_distance(self, se_spec):
        params = KernelParams(0.0, 0.0, -20.0)
        assert kernel_eval(se_spec, params, 0.0, 1.0, same_index=False) == pytest.approx(math.exp(-0.5))

    def test_matern_unit_scaled_distance(self, matern_spec):
        params = KernelParams(math.log(2.0), math.log(2.0), -20.0)
        value = kernel_eval(matern_spec, params, 0.0, 2.0, same_index=False)
        assert value == pytest.approx(4.0 * (1.0 + math.sqrt(3.0)) * math.exp(-math.sqrt(3.0)))
        assert value == pytest.approx(1.9336, abs=1e-4)

    def test_rejects_non_finite_input(self, se_spec, unit_params):
        with pytest.raises(InvalidArgumentError):
            kernel_eval(se_spec, unit_params, math.inf, 0.0, same_index=False)

    def test_zero_distance_is_maximum(self, any_spec, unit_params):
        peak = kernel_eval(any_spec, unit_params, 0.0, 0.0, same_index=False)
        for distance in np.linspace(0.01, 10.0, 50):
            assert kernel_eval(any_spec, unit_params, 0.0, distance, same_index=False) < peak


class TestCovMatrix:

    def test_single_point_train_diag(self, se_spec, unit_params):
        K = cov_matrix(se_spec, unit_params, [0.0], noise_mode=NoiseMode.TRAIN_DIAG)
        assert K.shape == (1, 1)
        assert K[0, 0] == pytest.approx(unit_params.signal_var + unit_params.noise_var)

    def test_two_points(self, se_spec):
        params = KernelParams(0.0, 0.0, -20.0)
        K = cov_matrix(se_spec, params, [0.0, 1.0])
        expected = np.array([[1.0, math.exp(-0.5)], [math.exp(-0.5), 1.0]])
        np.testing.assert_allclose(K, expected, rtol=1e-12)

    def test_cross_covariance_has_no_noise(self, any_spec, unit_params):
        X1 = np.array([0.0, 1.0, 2.0])
        X2 = np.array([0.0, 1.0])
        K = cov_matrix(any_spec, unit_params, X1, X2, noise_mode=NoiseMode.NONE)
        assert K.shape == (3, 2)
        assert K[0, 0] == pytest.approx(unit_params.signal_var)
        assert K[1, 1] == pytest.approx(unit_params.signal_var)

    def test_train_diag_requires_same_set(self, se_spec, unit_params):
        with pytest.raises(InvalidArgumentError):
            cov_matrix(se_spec, unit_params, [0.0, 1.0], [0.0, 2.0], noise_mode=NoiseMode.TRAIN_DIAG)

    def test_noise_mode_from_string(self, se_spec, unit_params):
        K = cov_matrix(se_spec, unit_params, [0.0, 1.0], noise_mode="train_diag")
        assert K[0, 0] == pytest.approx(prior_variance(unit_params, noise=True))

    def test_symmetric_positive_definite(self, any_spec):
        rng = np.random.default_rng(3)
        X = rng.uniform(-3, 3, size=40)
        for _ in range(5):
            params = _random_params(rng)
            K = cov_matrix(any_spec, params, X, noise_mode=NoiseMode.TRAIN_DIAG)
            np.testing.assert_array_equal(K, K.T)
            np.linalg.cholesky(K)

    def test_scaling_invariance(self, any_spec):
        X = np.array([-1.0, 0.2, 0.7, 2.5])
        params = KernelParams.from_natural(1.3, 0.8, 0.1)
        scaled = KernelParams.from_natural(1.3, 0.8 * 7.0, 0.1)
        np.testing.assert_allclose(
            cov_matrix(any_spec, params, X),
            cov_matrix(any_spec, scaled, 7.0 * X),
            rtol=1e-12,
        )

    def test_one_dimensional_input_is_column(self):
        assert as_inputs([1.0, 2.0]).shape == (2, 1)
        assert as_inputs(3.0).shape == (1, 1)


class TestCovMatrixGrads:
    """Test analytic covariance derivatives."""

    def test_noise_gradient_is_diagonal(self, any_spec, unit_params):
        _, _, d_noise = cov_matrix_grads(any_spec, unit_params, [0.0, 0.5, 3.0])
        np.testing.assert_allclose(d_noise, 2.0 * unit_params.noise_var * np.eye(3))

    def test_signal_gradient_is_twice_noise_free_kernel(self, any_spec, unit_params):
        X = [0.0, 0.5, 3.0]
        d_signal, _, _ = cov_matrix_grads(any_spec, unit_params, X)
        K = cov_matrix(any_spec, unit_params, X, noise_mode=NoiseMode.TRAIN_DIAG)
        np.testing.assert_allclose(d_signal, 2.0 * (K - unit_params.noise_var * np.eye(3)), rtol=1e-12)

    def test_se_lengthscale_gradient_two_points(self, se_spec):
        params = KernelParams.from_natural(1.5, 0.7, 0.1)
        _, d_length, _ = cov_matrix_grads(se_spec, params, [0.0, 1.0])
        d = 1.0 / 0.7
        assert d_length[0, 1] == pytest.approx(1.5 ** 2 * math.exp(-d ** 2 / 2) * d ** 2)
        assert d_length[0, 0] == 0.0

    def test_matches_central_differences(self, any_spec):
        rng = np.random.default_rng(11)
        X = rng.uniform(-3, 3, size=12)
        step = 1e-5
        for _ in range(5):
            params = _random_params(rng)
            grads = cov_matrix_grads(any_spec, params, X)
            theta = params.to_array()
            scale = np.abs(cov_matrix(any_spec, params, X, noise_mode=NoiseMode.TRAIN_DIAG)).max()
            for k, analytic in enumerate(grads):
                plus, minus = theta.copy(), theta.copy()
                plus[k] += step
                minus[k] -= step
                numeric = (
                    cov_matrix(any_spec, KernelParams.from_array(plus), X, noise_mode=NoiseMode.TRAIN_DIAG)
                    - cov_matrix(any_spec, KernelParams.from_array(minus), X, noise_mode=NoiseMode.TRAIN_DIAG)
                ) / (2.0 * step)
                np.testing.assert_allclose(numeric, analytic, rtol=1e-5, atol=1e-8 * scale)
                np.testing.assert_array_equal(analytic, analytic.T)
