"""
Iterative trimming Gaussian process.

Shrinking: the kept fraction alpha decreases from 1 to alpha1 over the
first n_shrink iterations. Concentration: each iteration trains on the
current h-subset, predicts over the full sample and re-selects the
ceil(alpha * n) points with the smallest scaled residuals, until the subset
repeats or n_maxiter is reached. Optional reweighting: one refit on every
point with d_i <= eta2 * sqrt(c1).

The subset is always re-selected from all n points, so a point dropped in
an early iteration can come back later.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np
from loguru import logger

from config import ALPHA1, ALPHA2, N_MAXITER, N_SHRINK
from src.datasets import Dataset
from src.errors import InvalidArgumentError, ModelFormatError, NumericalFailureError
from src.gp import MIN_TRAIN_POINTS, Prediction, TrainedGP, fit
from src.kernels import KernelParams, KernelSpec
from src.optimize import OptimizerConfig
from src.stats import chi2_quantile, consistency_factor, lowest_fraction_indices
from src.utils import constants as keys

MIN_ITGP_POINTS = 10
DEFAULT_OUTLIER_THRESHOLD = 2.0


@dataclass(frozen=True)
class ITGPConfig:
    alpha1: float = ALPHA1
    alpha2: float = ALPHA2
    n_shrink: int = N_SHRINK
    n_maxiter: int = N_MAXITER
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    spec: KernelSpec = field(default_factory=KernelSpec)

    def __post_init__(self):
        if not 0.0 < self.alpha1 <= 1.0:
            raise InvalidArgumentError(f"alpha1 must be in (0, 1], got {self.alpha1}")
        if not 0.0 <= self.alpha2 < 1.0:
            raise InvalidArgumentError(f"alpha2 must be in [0, 1), got {self.alpha2}")
        if self.n_shrink < 0:
            raise InvalidArgumentError(f"n_shrink must be >= 0, got {self.n_shrink}")
        if self.n_maxiter < 1:
            raise InvalidArgumentError(f"n_maxiter must be >= 1, got {self.n_maxiter}")


@dataclass(frozen=True, eq=False)
class ITGPResult:
    """
    The fitted model plus everything the trimming produced.

    inliers is the last selected subset. When concentration stops at
    n_maxiter without converging, gp was trained on the previous subset, so
    gp.train_indices can differ from inliers.
    """
    gp: TrainedGP
    c: float
    inliers: np.ndarray
    scaled_residuals: np.ndarray
    n_iterations: int
    converged: bool
    reweighted: bool
    warning: Optional[str] = None

    @classmethod
    def from_gp(cls, gp: TrainedGP) -> 'ITGPResult':
        """View a standard GP as an untrimmed result (c = 1, every point kept)."""
        n = gp.n_train
        prediction = gp.predict(gp.train_X)
        residuals = np.abs(gp.train_y - prediction.mean) / prediction.sd_observed
        return cls(
            gp=gp,
            c=1.0,
            inliers=np.arange(n) if gp.train_indices is None else np.asarray(gp.train_indices),
            scaled_residuals=residuals,
            n_iterations=1,
            converged=True,
            reweighted=False,
        )

    def predict(self, X_star) -> Prediction:
        return self.gp.predict(X_star)

    def scaled_sd(self, X_star) -> np.ndarray:
        """Observed-scale predictive sd corrected by the consistency factor."""
        return self.gp.predict(X_star).sd_observed * math.sqrt(self.c)

    def prediction_interval(self, X_star, n_sigma: float = 2.0) -> Tuple[np.ndarray, np.ndarray]:
        prediction = self.gp.predict(X_star)
        half_width = n_sigma * prediction.sd_observed * math.sqrt(self.c)
        return prediction.mean - half_width, prediction.mean + half_width

    def outlier_scores(self, data: Optional[Dataset] = None) -> np.ndarray:
        """r'_i = d_i / sqrt(c), from stored residuals or recomputed on data."""
        d = self.scaled_residuals if data is None else scaled_residuals(self.gp, data)
        return d / math.sqrt(self.c)

    def purified(self, data: Dataset, threshold: float = DEFAULT_OUTLIER_THRESHOLD) -> Dataset:
        """The sample with detected outliers removed."""
        flagged = detect_outliers(self, data, threshold)
        keep = np.setdiff1d(np.arange(data.n), flagged)
        return data.subset(keep)

    def to_dict(self) -> Dict[str, Any]:
        return {
            keys.GP: self.gp.to_dict(),
            keys.CONSISTENCY: float(self.c),
            keys.INLIERS: [int(i) for i in self.inliers],
            keys.SCALED_RESIDUALS: [float(v) for v in self.scaled_residuals],
            keys.N_ITERATIONS: int(self.n_iterations),
            keys.CONVERGED: bool(self.converged),
            keys.REWEIGHTED: bool(self.reweighted),
            keys.WARNING_KEY: self.warning,
        }

    @classmethod
    def from_dict(cls, document: Dict[str, Any]) -> 'ITGPResult':
        try:
            c = float(document[keys.CONSISTENCY])
            if not c >= 1.0:
                raise InvalidArgumentError(f"consistency factor must be >= 1, got {c}")
            return cls(
                gp=TrainedGP.from_dict(document[keys.GP]),
                c=c,
                inliers=np.asarray(document[keys.INLIERS], dtype=int),
                scaled_residuals=np.asarray(document[keys.SCALED_RESIDUALS], dtype=float),
                n_iterations=int(document[keys.N_ITERATIONS]),
                converged=bool(document[keys.CONVERGED]),
                reweighted=bool(document[keys.REWEIGHTED]),
                warning=document.get(keys.WARNING_KEY),
            )
        except (KeyError, TypeError, InvalidArgumentError) as e:
            raise ModelFormatError(f"Invalid ITGP model document: {e}") from e


def shrink_alpha(j: int, alpha1: float, n_shrink: int) -> float:
    """alpha = alpha1 + (1 - alpha1) * max(1 - j / n_shrink, 0)."""
    if n_shrink <= 0:
        return alpha1
    return alpha1 + (1.0 - alpha1) * max(1.0 - j / n_shrink, 0.0)


def scaled_residuals(gp: TrainedGP, data: Dataset) -> np.ndarray:
    """d_i = |y_i - mu_i| / sigma_i with sigma including observation noise."""
    prediction = gp.predict(data.x)
    sd = prediction.sd_observed
    if np.any(sd <= 0):
        raise NumericalFailureError("Predictive standard deviation is zero")
    return np.abs(data.y - prediction.mean) / sd


def _fit_subset(
    data: Dataset,
    indices: np.ndarray,
    cfg: ITGPConfig,
    init_params: Optional[KernelParams],
    iteration: int,
) -> TrainedGP:
    try:
        return fit(data.subset(indices), cfg.spec, cfg.optimizer, init_params=init_params, train_indices=indices)
    except NumericalFailureError as e:
        raise NumericalFailureError(
            f"GP fit failed in ITGP iteration {iteration}: {e}",
            jitter_levels=e.jitter_levels,
            iteration=iteration,
        ) from e


def itgp_fit(data: Dataset, cfg: Optional[ITGPConfig] = None) -> ITGPResult:
    """
    Robust GP regression by iterative trimming.

    Raises:
        InvalidArgumentError: If fewer than 10 points are given
        NumericalFailureError: If an inner GP fit fails (carries the iteration)
    """
    cfg = cfg or ITGPConfig()
    n = data.n
    if n < MIN_ITGP_POINTS:
        raise InvalidArgumentError(f"ITGP needs at least {MIN_ITGP_POINTS} points, got {n}")

    c1 = consistency_factor(cfg.alpha1)
    everything = np.arange(n)

    gp: Optional[TrainedGP] = None
    train_idx = everything
    inliers: Optional[np.ndarray] = None
    d = np.zeros(n)
    converged = False
    j = 0

    for j in range(1, cfg.n_maxiter + 1):
        if j > 1:
            train_idx = inliers
        # an unchanged training subset would only reproduce the same model
        if gp is None or not np.array_equal(train_idx, gp.train_indices):
            gp = _fit_subset(data, train_idx, cfg, None if gp is None else gp.params, j)

        d = scaled_residuals(gp, data)
        alpha = shrink_alpha(j, cfg.alpha1, cfg.n_shrink)
        new_inliers = lowest_fraction_indices(d, alpha)
        logger.debug(f"ITGP iteration {j}: alpha={alpha:.3f} kept={new_inliers.size}/{n}")

        if inliers is not None and np.array_equal(new_inliers, inliers):
            converged = True
            break
        inliers = new_inliers

    logger.info(
        f"ITGP concentration finished after {j} iterations "
        f"({'converged' if converged else 'not converged'}), c1={c1.c:.4f}"
    )
    concentrated = ITGPResult(
        gp=gp,
        c=c1.c,
        inliers=inliers,
        scaled_residuals=d,
        n_iterations=j,
        converged=converged,
        reweighted=False,
    )
    if cfg.alpha2 <= 0:
        return concentrated

    c2 = consistency_factor(cfg.alpha2)
    threshold = math.sqrt(chi2_quantile(cfg.alpha2, 1)) * math.sqrt(c1.c)
    reweight_idx = np.flatnonzero(d <= threshold)
    if reweight_idx.size < MIN_TRAIN_POINTS:
        message = (
            f"Reweighting kept only {reweight_idx.size} points (threshold {threshold:.4g}); "
            "returning the concentration result"
        )
        logger.warning(message)
        return ITGPResult(
            gp=gp,
            c=c1.c,
            inliers=inliers,
            scaled_residuals=d,
            n_iterations=j,
            converged=converged,
            reweighted=False,
            warning=message,
        )

    if not np.array_equal(reweight_idx, gp.train_indices):
        gp = _fit_subset(data, reweight_idx, cfg, gp.params, j + 1)
    logger.info(f"ITGP reweighting kept {reweight_idx.size}/{n} points, c2={c2.c:.4f}")
    return ITGPResult(
        gp=gp,
        c=c2.c,
        inliers=reweight_idx,
        scaled_residuals=scaled_residuals(gp, data),
        n_iterations=j,
        converged=converged,
        reweighted=True,
    )


def detect_outliers(
    result: ITGPResult,
    data: Optional[Dataset] = None,
    threshold: float = DEFAULT_OUTLIER_THRESHOLD,
) -> np.ndarray:
    """
    Indices whose consistency-corrected residual d_i / sqrt(c) exceeds threshold.

    Without data the final model's stored residuals are used.
    """
    if not threshold > 0:
        raise InvalidArgumentError(f"threshold must be positive, got {threshold}")
    return np.flatnonzero(result.outlier_scores(data) > threshold)
