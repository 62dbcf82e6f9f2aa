"""
Seeded synthetic datasets.

Neal benchmark family: f(x) = 0.3 + 0.4x + 0.5 sin(2.7x) + 1.1/(1+x^2) on
[-3, 3], with a fixed-size random subset of points replaced by outliers.

Cluster-like benchmark: a smooth monotone ridge on a magnitude-like axis
[10, 18] with noise growing towards faint (large x) points and one-sided
outliers shifted to larger y, the way unresolved binaries sit on one side
of a main sequence. The ridge is

    g(x) = 0.8 + 0.9 t + 0.35 t^2 - 0.25 t^3,    t = (x - 10) / 8

Every generator draws from its own PCG64 stream seeded with the given seed,
so a (case, seed) pair reproduces bit-identically on every platform.
"""
import math
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from config import NEAL_N_TRAIN, NEAL_SIGMA_R, NEAL_SKEWED_BIAS, TEST_GRID_SIZE
from src.errors import InvalidArgumentError

NEAL_X_RANGE = (-3.0, 3.0)
CLUSTER_X_RANGE = (10.0, 18.0)
CLUSTER_NOISE_RANGE = (0.005, 0.05)
CLUSTER_OFFSET_RANGE = (0.02, 0.4)


def make_rng(seed: int) -> np.random.Generator:
    """Portable 64-bit generator; one independent stream per seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def _fixed_count(fraction: float, n: int) -> int:
    # round half up, not banker's rounding
    return int(math.floor(fraction * n + 0.5))


@dataclass(frozen=True, eq=False)
class Dataset:
    """Paired inputs/targets with optional ground-truth columns."""
    x: np.ndarray
    y: np.ndarray
    is_outlier: Optional[np.ndarray] = None
    f_true: Optional[np.ndarray] = None

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float).ravel()
        y = np.asarray(self.y, dtype=float).ravel()
        if x.size != y.size:
            raise InvalidArgumentError(f"x and y lengths differ: {x.size} vs {y.size}")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise InvalidArgumentError("Dataset values must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

        if self.is_outlier is not None:
            flags = np.asarray(self.is_outlier, dtype=bool).ravel()
            if flags.size != x.size:
                raise InvalidArgumentError("is_outlier length does not match x")
            object.__setattr__(self, "is_outlier", flags)
        if self.f_true is not None:
            f_true = np.asarray(self.f_true, dtype=float).ravel()
            if f_true.size != x.size:
                raise InvalidArgumentError("f_true length does not match x")
            if not np.all(np.isfinite(f_true)):
                raise InvalidArgumentError("f_true values must be finite")
            object.__setattr__(self, "f_true", f_true)

    def __len__(self) -> int:
        return int(self.x.size)

    @property
    def n(self) -> int:
        return len(self)

    def subset(self, indices) -> 'Dataset':
        indices = np.asarray(indices, dtype=int)
        return Dataset(
            x=self.x[indices],
            y=self.y[indices],
            is_outlier=None if self.is_outlier is None else self.is_outlier[indices],
            f_true=None if self.f_true is None else self.f_true[indices],
        )

    def ground_truth_inliers(self) -> 'Dataset':
        """The purified sample: only points not flagged as generated outliers."""
        if self.is_outlier is None:
            raise InvalidArgumentError("Dataset has no ground-truth outlier flags")
        return self.subset(np.flatnonzero(~self.is_outlier))


@dataclass(frozen=True)
class NealCase:
    pi_o: float = 0.15
    b_o: float = 0.0
    sigma_o: float = 1.0
    sigma_r: float = NEAL_SIGMA_R
    n_train: int = NEAL_N_TRAIN
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.pi_o < 1.0:
            raise InvalidArgumentError(f"pi_o must be in [0, 1), got {self.pi_o}")
        if self.sigma_o <= 0 or self.sigma_r <= 0:
            raise InvalidArgumentError("sigma_o and sigma_r must be positive")
        if self.n_train < 1:
            raise InvalidArgumentError("n_train must be positive")

    @classmethod
    def fiducial(cls, seed: int = 0) -> 'NealCase':
        return cls(seed=seed)

    @classmethod
    def abundant(cls, seed: int = 0) -> 'NealCase':
        return cls(pi_o=0.45, seed=seed)

    @classmethod
    def skewed(cls, seed: int = 0, b_o: float = NEAL_SKEWED_BIAS) -> 'NealCase':
        return cls(b_o=b_o, seed=seed)

    @classmethod
    def extreme(cls, seed: int = 0) -> 'NealCase':
        return cls(sigma_o=5.0, seed=seed)

    @classmethod
    def preset(cls, name: str, seed: int = 0, b_o: float = NEAL_SKEWED_BIAS) -> 'NealCase':
        presets: Dict[str, NealCase] = {
            "fiducial": cls.fiducial(seed),
            "abundant": cls.abundant(seed),
            "skewed": cls.skewed(seed, b_o=b_o),
            "extreme": cls.extreme(seed),
        }
        if name not in presets:
            raise InvalidArgumentError(f"Unknown Neal preset '{name}'. Valid options: {', '.join(presets)}")
        return presets[name]


def neal_true_function(x):
    """f(x) = 0.3 + 0.4x + 0.5 sin(2.7x) + 1.1 / (1 + x^2)."""
    x = np.asarray(x, dtype=float)
    value = 0.3 + 0.4 * x + 0.5 * np.sin(2.7 * x) + 1.1 / (1.0 + x ** 2)
    return float(value) if value.ndim == 0 else value


def generate_neal(case: NealCase) -> Dataset:
    """Training set of the Neal benchmark for one contamination case."""
    rng = make_rng(case.seed)
    n = case.n_train
    x = rng.uniform(NEAL_X_RANGE[0], NEAL_X_RANGE[1], size=n)
    f_true = neal_true_function(x)

    n_outliers = _fixed_count(case.pi_o, n)
    is_outlier = np.zeros(n, dtype=bool)
    is_outlier[rng.choice(n, size=n_outliers, replace=False)] = True

    y = f_true + rng.normal(0.0, case.sigma_r, size=n)
    y[is_outlier] = f_true[is_outlier] + case.b_o + rng.normal(0.0, case.sigma_o, size=n_outliers)
    return Dataset(x=x, y=y, is_outlier=is_outlier, f_true=f_true)


def generate_neal_test_grid(m: int = TEST_GRID_SIZE) -> Dataset:
    """Noise-free, evenly spaced test set on [-3, 3]."""
    if m < 2:
        raise InvalidArgumentError(f"Test grid needs at least 2 points, got {m}")
    x = np.linspace(NEAL_X_RANGE[0], NEAL_X_RANGE[1], m)
    f_true = neal_true_function(x)
    return Dataset(x=x, y=f_true, is_outlier=np.zeros(m, dtype=bool), f_true=f_true)


def cluster_ridge(x):
    """Smooth monotone ridge line of the cluster-like benchmark."""
    t = (np.asarray(x, dtype=float) - CLUSTER_X_RANGE[0]) / (CLUSTER_X_RANGE[1] - CLUSTER_X_RANGE[0])
    return 0.8 + 0.9 * t + 0.35 * t ** 2 - 0.25 * t ** 3


def cluster_noise_sd(x):
    """Observational noise grows linearly from the bright to the faint end."""
    t = (np.asarray(x, dtype=float) - CLUSTER_X_RANGE[0]) / (CLUSTER_X_RANGE[1] - CLUSTER_X_RANGE[0])
    return CLUSTER_NOISE_RANGE[0] + (CLUSTER_NOISE_RANGE[1] - CLUSTER_NOISE_RANGE[0]) * t


def generate_cluster_like(n: int, outlier_frac: float, seed: int) -> Dataset:
    """Heteroscedastic ridge with one-sided contamination."""
    if n < 50:
        raise InvalidArgumentError(f"Cluster-like datasets need n >= 50, got {n}")
    if not 0.0 <= outlier_frac < 1.0:
        raise InvalidArgumentError(f"outlier_frac must be in [0, 1), got {outlier_frac}")

    rng = make_rng(seed)
    x = rng.uniform(CLUSTER_X_RANGE[0], CLUSTER_X_RANGE[1], size=n)
    f_true = cluster_ridge(x)

    n_outliers = _fixed_count(outlier_frac, n)
    is_outlier = np.zeros(n, dtype=bool)
    is_outlier[rng.choice(n, size=n_outliers, replace=False)] = True

    y = f_true + rng.normal(0.0, 1.0, size=n) * cluster_noise_sd(x)
    offsets = rng.uniform(CLUSTER_OFFSET_RANGE[0], CLUSTER_OFFSET_RANGE[1], size=n_outliers)
    y[is_outlier] = f_true[is_outlier] + offsets
    return Dataset(x=x, y=y, is_outlier=is_outlier, f_true=f_true)


def generate_cluster_test_grid(m: int = TEST_GRID_SIZE) -> Dataset:
    """Noise-free, evenly spaced test set along the cluster ridge."""
    if m < 2:
        raise InvalidArgumentError(f"Test grid needs at least 2 points, got {m}")
    x = np.linspace(CLUSTER_X_RANGE[0], CLUSTER_X_RANGE[1], m)
    f_true = cluster_ridge(x)
    return Dataset(x=x, y=f_true, is_outlier=np.zeros(m, dtype=bool), f_true=f_true)
