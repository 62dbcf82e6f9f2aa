"""
Exact Gaussian-process regression with a constant mean.

The constant mean is the sample mean of the training targets and is not
optimized. Kernel hyperparameters are fitted by minimizing the negative log
marginal likelihood with analytic gradients.
"""
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.linalg import LinAlgError, cho_solve, cholesky, solve_triangular
from scipy.spatial.distance import pdist

from config import LOG_PARAM_BOUND
from src.datasets import Dataset, make_rng
from src.errors import InvalidArgumentError, ModelFormatError, NumericalFailureError
from src.kernels import KernelParams, KernelSpec, as_inputs, cov_matrix, cov_matrix_grads
from src.optimize import OptimizerConfig, minimize_multistart
from src.utils import constants as keys
from src.utils.kernel_models import KernelFamily, NoiseMode

MIN_TRAIN_POINTS = 3
JITTER_START = 1e-10
JITTER_MAX = 1e-4
LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True, eq=False)
class Prediction:
    mean: np.ndarray
    var_latent: np.ndarray
    var_observed: np.ndarray

    @property
    def sd_latent(self) -> np.ndarray:
        return np.sqrt(self.var_latent)

    @property
    def sd_observed(self) -> np.ndarray:
        return np.sqrt(self.var_observed)


@dataclass(frozen=True, eq=False)
class TrainedGP:
    """A GP conditioned on its training subset; immutable after fit."""
    spec: KernelSpec
    params: KernelParams
    mean_const: float
    train_X: np.ndarray
    train_y: np.ndarray
    chol: np.ndarray
    alpha_vec: np.ndarray
    jitter: float = 0.0
    train_indices: Optional[np.ndarray] = None

    @property
    def n_train(self) -> int:
        return int(self.train_y.size)

    def predict(self, X_star) -> Prediction:
        return predict(self, X_star)

    def neg_log_marginal_likelihood(self) -> float:
        value, _ = neg_log_marginal_likelihood(self.spec, self.params, self.mean_const, self.train_X, self.train_y)
        return value

    def to_dict(self) -> Dict[str, Any]:
        train_x = self.train_X[:, 0] if self.train_X.shape[1] == 1 else self.train_X
        return {
            keys.FAMILY: self.spec.family.value,
            keys.LOG_PARAMS: {
                keys.LOG_SIGNAL_SD: self.params.log_signal_sd,
                keys.LOG_LENGTHSCALE: self.params.log_lengthscale,
                keys.LOG_NOISE_SD: self.params.log_noise_sd,
            },
            keys.MEAN_CONST: float(self.mean_const),
            keys.TRAIN_X: train_x.tolist(),
            keys.TRAIN_Y: self.train_y.tolist(),
            keys.TRAIN_INDICES: None if self.train_indices is None else [int(i) for i in self.train_indices],
        }

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> 'TrainedGP':
        """Rebuild a model; the factorization is recomputed from the stored training subset."""
        try:
            spec = KernelSpec(KernelFamily.from_string(document[keys.FAMILY]))
            log_params = document[keys.LOG_PARAMS]
            params = KernelParams(
                float(log_params[keys.LOG_SIGNAL_SD]),
                float(log_params[keys.LOG_LENGTHSCALE]),
                float(log_params[keys.LOG_NOISE_SD]),
            )
            indices = document.get(keys.TRAIN_INDICES)
            return condition(
                spec,
                params,
                np.asarray(document[keys.TRAIN_X], dtype=float),
                np.asarray(document[keys.TRAIN_Y], dtype=float),
                mean_const=float(document[keys.MEAN_CONST]),
                train_indices=None if indices is None else np.asarray(indices, dtype=int),
            )
        except (KeyError, TypeError, InvalidArgumentError) as e:
            raise ModelFormatError(f"Invalid GP model document: {e}") from e


def stable_cholesky(K: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Lower Cholesky factor of K, adding diagonal jitter on failure.

    Jitter starts at 1e-10 * mean(diag K) and grows by 10x up to
    1e-4 * mean(diag K).

    Returns:
        (factor, jitter actually added)

    Raises:
        NumericalFailureError: carrying every jitter level attempted
    """
    try:
        return cholesky(K, lower=True), 0.0
    except LinAlgError:
        pass

    scale = float(np.mean(np.diag(K)))
    attempted = []
    jitter = JITTER_START * scale
    while jitter <= JITTER_MAX * scale * (1.0 + 1e-9):
        attempted.append(jitter)
        try:
            L = cholesky(K + jitter * np.eye(K.shape[0]), lower=True)
            logger.warning(f"Cholesky needed jitter {jitter:.3g} (mean diagonal {scale:.3g})")
            return L, jitter
        except LinAlgError:
            jitter *= 10.0
    raise NumericalFailureError(
        f"Cholesky factorization failed after jitter levels {attempted}", jitter_levels=attempted
    )


def _check_training_data(X, y) -> Tuple[np.ndarray, np.ndarray]:
    X = as_inputs(X)
    y = np.asarray(y, dtype=float).ravel()
    if X.shape[0] != y.size:
        raise InvalidArgumentError(f"X has {X.shape[0]} rows but y has {y.size} values")
    if y.size < 1:
        raise InvalidArgumentError("At least one training point is required")
    if not np.all(np.isfinite(y)):
        raise InvalidArgumentError("Training targets must be finite")
    return X, y


def neg_log_marginal_likelihood(
    spec: KernelSpec,
    params: KernelParams,
    mean_const: float,
    X,
    y,
) -> Tuple[float, np.ndarray]:
    """
    Negative log marginal likelihood and its gradient with respect to
    (log signal sd, log lengthscale, log noise sd, mean_const).
    """
    X, y = _check_training_data(X, y)
    n = y.size
    K = cov_matrix(spec, params, X, noise_mode=NoiseMode.TRAIN_DIAG)
    L, _ = stable_cholesky(K)

    r = y - mean_const
    a = cho_solve((L, True), r)
    value = 0.5 * float(r @ a) + float(np.sum(np.log(np.diag(L)))) + 0.5 * n * LOG_2PI

    # d/dtheta = 0.5 tr((K^-1 - a a^T) dK/dtheta)
    Q = cho_solve((L, True), np.eye(n)) - np.outer(a, a)
    grad = np.empty(4)
    for i, dK in enumerate(cov_matrix_grads(spec, params, X)):
        grad[i] = 0.5 * float(np.sum(Q * dK))
    grad[3] = -float(np.sum(a))
    return value, grad


def default_initial_params(X, y) -> KernelParams:
    """Data-driven starting point for the hyperparameter search."""
    X = as_inputs(X)
    y = np.asarray(y, dtype=float)
    scale = float(np.std(y))
    if scale <= 0:
        scale = 1.0
    distances = pdist(X) if X.shape[0] > 1 else np.array([])
    lengthscale = float(np.median(distances)) if distances.size else 1.0
    if lengthscale <= 0:
        lengthscale = 1.0
    return KernelParams.from_natural(scale, lengthscale, 0.1 * scale)


def condition(
    spec: KernelSpec,
    params: KernelParams,
    X,
    y,
    mean_const: Optional[float] = None,
    train_indices: Optional[np.ndarray] = None,
) -> TrainedGP:
    """Condition a GP with fixed hyperparameters on training data."""
    X, y = _check_training_data(X, y)
    if mean_const is None:
        mean_const = float(np.mean(y))
    K = cov_matrix(spec, params, X, noise_mode=NoiseMode.TRAIN_DIAG)
    L, jitter = stable_cholesky(K)
    alpha_vec = cho_solve((L, True), y - mean_const)
    return TrainedGP(
        spec=spec,
        params=params,
        mean_const=float(mean_const),
        train_X=X,
        train_y=y,
        chol=L,
        alpha_vec=alpha_vec,
        jitter=jitter,
        train_indices=train_indices,
    )


def fit(
    data: Dataset,
    spec: KernelSpec,
    opt_cfg: Optional[OptimizerConfig] = None,
    init_params: Optional[KernelParams] = None,
    train_indices: Optional[np.ndarray] = None,
) -> TrainedGP:
    """
    Fit hyperparameters by multi-restart minimization of the NLL.

    The first start is init_params (or the data-driven default); the others
    perturb it uniformly by +-1 in log-space from a generator seeded with
    opt_cfg.seed.

    Raises:
        InvalidArgumentError: If fewer than 3 points are given
        NumericalFailureError: If every restart fails
    """
    opt_cfg = opt_cfg or OptimizerConfig()
    if data.n < MIN_TRAIN_POINTS:
        raise InvalidArgumentError(f"GP fit needs at least {MIN_TRAIN_POINTS} points, got {data.n}")

    X = as_inputs(data.x)
    y = data.y
    mean_const = float(np.mean(y))
    lower, upper = -LOG_PARAM_BOUND, LOG_PARAM_BOUND

    base = (init_params or default_initial_params(X, y)).to_array()
    base = np.clip(base, lower, upper)
    rng = make_rng(opt_cfg.seed)
    starts = [base] + [
        np.clip(base + rng.uniform(-1.0, 1.0, size=3), lower, upper)
        for _ in range(opt_cfg.n_restarts - 1)
    ]

    def objective(theta: np.ndarray):
        value, grad = neg_log_marginal_likelihood(spec, KernelParams.from_array(theta), mean_const, X, y)
        return value, grad[:3]

    result = minimize_multistart(objective, starts, bounds=(lower, upper), cfg=opt_cfg)
    params = KernelParams.from_array(result.x)
    logger.debug(
        f"GP fit on {data.n} points: nll={result.fun:.6g} signal_sd={params.signal_sd:.4g} "
        f"lengthscale={params.lengthscale:.4g} noise_sd={params.noise_sd:.4g}"
    )
    return condition(spec, params, X, y, mean_const=mean_const, train_indices=train_indices)


def predict(gp: TrainedGP, X_star) -> Prediction:
    """Posterior mean, latent variance and observed variance at query points."""
    X_star = as_inputs(X_star)
    Ks = cov_matrix(gp.spec, gp.params, gp.train_X, X_star, noise_mode=NoiseMode.NONE)
    mean = gp.mean_const + Ks.T @ gp.alpha_vec

    v = solve_triangular(gp.chol, Ks, lower=True)
    var_latent = np.maximum(gp.params.signal_var - np.sum(v ** 2, axis=0), 0.0)
    return Prediction(mean=mean, var_latent=var_latent, var_observed=var_latent + gp.params.noise_var)
