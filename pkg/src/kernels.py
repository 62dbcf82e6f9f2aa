"""
Stationary kernels with an additive white-noise term.

    SE:        k = s^2 exp(-r^2 / 2)                 + w^2 delta_ij
    Matern32:  k = s^2 (1 + sqrt(3) r) exp(-sqrt(3) r) + w^2 delta_ij

with r = |x_i - x_j| / l. Hyperparameters live in log-space. delta_ij
fires on index identity, never on coordinate equality.
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from src.errors import InvalidArgumentError
from src.utils.kernel_models import KernelFamily, NoiseMode

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class KernelSpec:
    family: KernelFamily = KernelFamily.SQUARED_EXPONENTIAL

    def __post_init__(self):
        if not isinstance(self.family, KernelFamily):
            object.__setattr__(self, "family", KernelFamily.from_string(self.family))


@dataclass(frozen=True)
class KernelParams:
    log_signal_sd: float
    log_lengthscale: float
    log_noise_sd: float

    def __post_init__(self):
        values = (self.log_signal_sd, self.log_lengthscale, self.log_noise_sd)
        if not all(math.isfinite(v) for v in values):
            raise InvalidArgumentError(f"Kernel log-parameters must be finite, got {values}")

    @classmethod
    def from_natural(cls, signal_sd: float, lengthscale: float, noise_sd: float) -> 'KernelParams':
        if min(signal_sd, lengthscale, noise_sd) <= 0:
            raise InvalidArgumentError("Kernel parameters must be strictly positive")
        return cls(math.log(signal_sd), math.log(lengthscale), math.log(noise_sd))

    @classmethod
    def from_array(cls, values) -> 'KernelParams':
        values = np.asarray(values, dtype=float)
        return cls(float(values[0]), float(values[1]), float(values[2]))

    def to_array(self) -> np.ndarray:
        return np.array([self.log_signal_sd, self.log_lengthscale, self.log_noise_sd])

    @property
    def signal_sd(self) -> float:
        return math.exp(self.log_signal_sd)

    @property
    def lengthscale(self) -> float:
        return math.exp(self.log_lengthscale)

    @property
    def noise_sd(self) -> float:
        return math.exp(self.log_noise_sd)

    @property
    def signal_var(self) -> float:
        return math.exp(2.0 * self.log_signal_sd)

    @property
    def noise_var(self) -> float:
        return math.exp(2.0 * self.log_noise_sd)


def as_inputs(X) -> np.ndarray:
    """Coerce inputs to a finite (n, d) float array; 1-D input means d = 1."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 0:
        X = X.reshape(1, 1)
    elif X.ndim == 1:
        X = X.reshape(-1, 1)
    if not np.all(np.isfinite(X)):
        raise InvalidArgumentError("Kernel inputs must be finite")
    return X


def _correlation(family: KernelFamily, r: np.ndarray) -> np.ndarray:
    if family == KernelFamily.SQUARED_EXPONENTIAL:
        return np.exp(-0.5 * r ** 2)
    return (1.0 + SQRT3 * r) * np.exp(-SQRT3 * r)


def _correlation_dlog_lengthscale(family: KernelFamily, r: np.ndarray) -> np.ndarray:
    # dr/dlog(l) = -r
    if family == KernelFamily.SQUARED_EXPONENTIAL:
        return r ** 2 * np.exp(-0.5 * r ** 2)
    return 3.0 * r ** 2 * np.exp(-SQRT3 * r)


def scaled_distances(params: KernelParams, X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
    return cdist(X1, X2, metric="euclidean") / params.lengthscale


def kernel_eval(spec: KernelSpec, params: KernelParams, xi, xj, same_index: bool) -> float:
    """Kernel value between two input points."""
    xi = as_inputs(xi)
    xj = as_inputs(xj)
    r = scaled_distances(params, xi, xj)
    value = params.signal_var * float(_correlation(spec.family, r)[0, 0])
    if same_index:
        value += params.noise_var
    return value


def _same_indexed_set(X1: np.ndarray, X2: np.ndarray) -> bool:
    return X1 is X2 or (X1.shape == X2.shape and np.array_equal(X1, X2))


def cov_matrix(
    spec: KernelSpec,
    params: KernelParams,
    X1,
    X2=None,
    noise_mode: NoiseMode = NoiseMode.NONE,
) -> np.ndarray:
    """
    Covariance matrix between two input sets.

    X2=None means X2 is X1. With TRAIN_DIAG the white-noise variance is added
    on the diagonal, which requires X1 and X2 to be the same indexed set.
    """
    X1 = as_inputs(X1)
    X2 = X1 if X2 is None else as_inputs(X2)
    noise_mode = NoiseMode.from_string(noise_mode) if isinstance(noise_mode, str) else noise_mode

    if noise_mode == NoiseMode.TRAIN_DIAG and not _same_indexed_set(X1, X2):
        raise InvalidArgumentError("train_diag noise requires X1 and X2 to be the same indexed set")

    K = params.signal_var * _correlation(spec.family, scaled_distances(params, X1, X2))
    if noise_mode == NoiseMode.TRAIN_DIAG:
        K[np.diag_indices_from(K)] += params.noise_var
    return K


def cov_matrix_grads(spec: KernelSpec, params: KernelParams, X) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Derivatives of the training covariance (with noise) with respect to
    (log signal sd, log lengthscale, log noise sd).
    """
    X = as_inputs(X)
    r = scaled_distances(params, X, X)
    s2 = params.signal_var

    d_signal = 2.0 * s2 * _correlation(spec.family, r)
    d_lengthscale = s2 * _correlation_dlog_lengthscale(spec.family, r)
    d_noise = 2.0 * params.noise_var * np.eye(X.shape[0])
    return d_signal, d_lengthscale, d_noise


def prior_variance(params: KernelParams, noise: Optional[bool] = False) -> float:
    """Kernel value at zero distance, optionally including the noise term."""
    return params.signal_var + (params.noise_var if noise else 0.0)
