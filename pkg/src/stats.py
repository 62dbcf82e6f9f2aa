"""
Chi-squared special functions, the trimming consistency factor and error metrics.

Only one and three degrees of freedom are ever needed, so both CDFs are
closed forms in the error function:

    F1(x) = erf(sqrt(x/2))
    F3(x) = erf(sqrt(x/2)) - sqrt(2x/pi) * exp(-x/2)
"""
import math
from dataclasses import dataclass

import numpy as np

from src.errors import InvalidArgumentError

SUPPORTED_DOF = (1, 3)
_QUANTILE_MAX_ITER = 200
# absorbs round-off in alpha * n
_CEIL_SLACK = 1e-9


@dataclass(frozen=True)
class ConsistencyFactor:
    """Variance correction for a GP trained on the alpha-trimmed sample."""
    alpha: float
    eta_sq: float
    c: float

    @property
    def eta(self) -> float:
        return math.sqrt(self.eta_sq)


@dataclass(frozen=True)
class ErrorMetrics:
    rmse: float
    mae: float
    n_test: int


def _check_dof(dof: int) -> None:
    if dof not in SUPPORTED_DOF:
        raise InvalidArgumentError(f"Unsupported degrees of freedom: {dof}. Supported: {SUPPORTED_DOF}")


def chi2_cdf(x: float, dof: int) -> float:
    """
    Cumulative distribution function of the chi-squared distribution.

    Args:
        x: Evaluation point, x >= 0
        dof: Degrees of freedom, 1 or 3

    Returns:
        Probability in [0, 1]

    Raises:
        InvalidArgumentError: If x is negative/non-finite or dof unsupported
    """
    _check_dof(dof)
    x = float(x)
    if math.isnan(x) or x < 0:
        raise InvalidArgumentError(f"chi2_cdf requires x >= 0, got {x}")
    if math.isinf(x):
        return 1.0

    half = x / 2.0
    value = math.erf(math.sqrt(half))
    if dof == 3:
        value -= math.sqrt(2.0 / math.pi) * math.sqrt(x) * math.exp(-half)
    return min(max(value, 0.0), 1.0)


def _chi2_pdf1(x: float) -> float:
    if x <= 0:
        return math.inf
    return math.exp(-x / 2.0) / math.sqrt(2.0 * math.pi * x)


def chi2_quantile(p: float, dof: int = 1) -> float:
    """
    Inverse CDF of the chi-squared distribution with one degree of freedom.

    Brackets the root, then runs Newton steps safeguarded by bisection.

    Raises:
        InvalidArgumentError: If p is outside [0, 1) or dof != 1
    """
    if dof != 1:
        raise InvalidArgumentError(f"chi2_quantile only supports dof=1, got {dof}")
    p = float(p)
    if not 0.0 <= p < 1.0:
        raise InvalidArgumentError(f"chi2_quantile requires 0 <= p < 1, got {p}")
    if p == 0.0:
        return 0.0

    lo, hi = 0.0, 1.0
    while chi2_cdf(hi, 1) < p:
        lo, hi = hi, hi * 2.0

    x = 0.5 * (lo + hi)
    for _ in range(_QUANTILE_MAX_ITER):
        residual = chi2_cdf(x, 1) - p
        if residual == 0.0:
            break
        if residual < 0:
            lo = x
        else:
            hi = x

        x_new = x - residual / _chi2_pdf1(x)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 1e-15 * max(1.0, x):
            x = x_new
            break
        x = x_new
    return x


def consistency_factor(alpha: float) -> ConsistencyFactor:
    """
    Factor c by which the variance predicted from an alpha-trimmed Gaussian
    sample underestimates the variance of the full sample.

    c = alpha / F3(eta^2) with eta^2 the alpha-quantile of chi2(1).
    alpha = 1 is the identity (no trimming), c = 1 exactly.
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise InvalidArgumentError(f"alpha must be in (0, 1], got {alpha}")
    if alpha == 1.0:
        return ConsistencyFactor(alpha=1.0, eta_sq=math.inf, c=1.0)

    eta_sq = chi2_quantile(alpha, 1)
    return ConsistencyFactor(alpha=alpha, eta_sq=eta_sq, c=alpha / chi2_cdf(eta_sq, 3))


def lowest_fraction_indices(d, alpha: float) -> np.ndarray:
    """
    Indices of the h = ceil(alpha * n) smallest values of d.

    Ties are broken by ascending index. The result is sorted ascending.
    """
    d = np.asarray(d, dtype=float).ravel()
    n = d.size
    if n < 1:
        raise InvalidArgumentError("lowest_fraction_indices requires at least one value")
    if not np.all(np.isfinite(d)):
        raise InvalidArgumentError("Residuals must be finite")
    if not 0.0 < alpha <= 1.0:
        raise InvalidArgumentError(f"alpha must be in (0, 1], got {alpha}")

    h = min(max(math.ceil(alpha * n - _CEIL_SLACK), 1), n)
    order = np.argsort(d, kind="stable")
    return np.sort(order[:h])


def compute_metrics(predicted, truth) -> ErrorMetrics:
    """RMSE and MAE of the residuals truth - predicted."""
    predicted = np.asarray(predicted, dtype=float).ravel()
    truth = np.asarray(truth, dtype=float).ravel()
    if predicted.size != truth.size:
        raise InvalidArgumentError(
            f"Length mismatch: {predicted.size} predictions vs {truth.size} truth values"
        )
    if truth.size == 0:
        raise InvalidArgumentError("compute_metrics requires at least one test point")

    delta = truth - predicted
    return ErrorMetrics(
        rmse=float(np.sqrt(np.mean(delta ** 2))),
        mae=float(np.mean(np.abs(delta))),
        n_test=int(truth.size),
    )
