"""
Run settings resolved from CLI flags, an optional YAML config file and the
defaults in config.py, in that order of precedence.
"""
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

import config
from src.errors import InvalidArgumentError
from src.itgp import ITGPConfig
from src.kernels import KernelSpec
from src.logger_config import logger
from src.optimize import OptimizerConfig
from src.utils.kernel_models import KernelFamily


@dataclass(frozen=True)
class RunSettings:
    kernel: Optional[str] = None
    method: str = config.METHOD
    alpha1: float = config.ALPHA1
    alpha2: float = config.ALPHA2
    n_shrink: int = config.N_SHRINK
    n_maxiter: int = config.N_MAXITER
    restarts: int = config.N_RESTARTS
    max_evals: int = config.MAX_EVALS
    seed: int = config.SEED
    threshold: float = config.OUTLIER_THRESHOLD
    replicates: int = config.REPLICATES
    workers: int = config.WORKERS
    b_o: float = config.NEAL_SKEWED_BIAS
    cluster_n: int = config.CLUSTER_N_TRAIN

    @classmethod
    def valid_keys(cls):
        return [f.name for f in fields(cls)]

    def kernel_spec(self, fallback: KernelFamily = KernelFamily.SQUARED_EXPONENTIAL) -> KernelSpec:
        family = KernelFamily.from_string(self.kernel) if self.kernel else fallback
        return KernelSpec(family)

    def optimizer_config(self, seed: Optional[int] = None) -> OptimizerConfig:
        return OptimizerConfig(
            n_restarts=self.restarts,
            max_evals=self.max_evals,
            grad_tol=config.GRAD_TOL,
            step_tol=config.STEP_TOL,
            seed=self.seed if seed is None else seed,
        )

    def itgp_config(self, spec: KernelSpec, alpha2: Optional[float] = None, seed: Optional[int] = None) -> ITGPConfig:
        return ITGPConfig(
            alpha1=self.alpha1,
            alpha2=self.alpha2 if alpha2 is None else alpha2,
            n_shrink=self.n_shrink,
            n_maxiter=self.n_maxiter,
            optimizer=self.optimizer_config(seed),
            spec=spec,
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Load settings overrides from a YAML file.

    Raises:
        InvalidArgumentError: On unreadable YAML or unknown keys
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        logger.error(f"Error parsing YAML file: {e}")
        raise InvalidArgumentError(f"Error parsing config file {path}: {e}") from e
    except OSError as e:
        raise InvalidArgumentError(f"Cannot read config file {path}: {e}") from e

    if not isinstance(data, dict):
        raise InvalidArgumentError(f"Config file {path} must contain a mapping, got {type(data).__name__}")

    unknown = sorted(set(data) - set(RunSettings.valid_keys()))
    if unknown:
        raise InvalidArgumentError(
            f"Unknown keys in config file {path}: {', '.join(unknown)}. "
            f"Valid keys: {', '.join(RunSettings.valid_keys())}"
        )
    logger.debug(f"Loaded config overrides from {path}: {list(data)}")
    return data


def resolve_settings(cli_values: Dict[str, Any], config_path: Optional[Union[str, Path]] = None) -> RunSettings:
    """Merge defaults, config-file values and explicitly given CLI flags."""
    settings = RunSettings()
    if config_path is not None:
        settings = replace(settings, **load_config_file(config_path))
    explicit = {k: v for k, v in cli_values.items() if v is not None and k in RunSettings.valid_keys()}
    return replace(settings, **explicit)
