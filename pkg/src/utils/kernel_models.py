"""
Enumerations for kernels, fitting methods and benchmark cases.

Replaces magic strings passed around the CLI and the model JSON with
type-safe Enums that round-trip through their string values.
"""
from enum import Enum
from typing import List

from src.errors import InvalidArgumentError


class _ChoiceEnum(Enum):
    """Enum whose members are selected by their string value."""

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_string(cls, value: str):
        """
        Convert string to enum member.

        Raises:
            InvalidArgumentError: If value doesn't match any member
        """
        for member in cls:
            if member.value == value:
                return member

        # Try case-insensitive match
        for member in cls:
            if isinstance(value, str) and member.value.lower() == value.lower():
                return member

        raise InvalidArgumentError(
            f"Unknown {cls.__name__}: '{value}'. "
            f"Valid options: {', '.join(m.value for m in cls)}"
        )

    @classmethod
    def get_choices_list(cls) -> List[str]:
        """Get list of values suitable for CLI choices."""
        return [member.value for member in cls]


class KernelFamily(_ChoiceEnum):
    """
    Stationary kernel families. Both are always summed with white noise.
    """
    SQUARED_EXPONENTIAL = "se"
    MATERN32 = "matern32"


class NoiseMode(_ChoiceEnum):
    """Whether the white-noise term is added when assembling a covariance."""
    TRAIN_DIAG = "train_diag"
    NONE = "none"


class FitMethod(_ChoiceEnum):
    """Model types accepted by the `fit` command."""
    GP = "gp"
    ITGP = "itgp"


class BenchmarkMethod(_ChoiceEnum):
    """Methods compared by the benchmark harness, in report order."""
    GP = "gp"
    ITGP = "itgp"
    ITGP_REWEIGHT = "itgp-reweight"
    IDEAL = "ideal"


class BenchmarkCase(_ChoiceEnum):
    """Synthetic contamination scenarios."""
    FIDUCIAL = "fiducial"
    ABUNDANT = "abundant"
    SKEWED = "skewed"
    EXTREME = "extreme"
    CLUSTER = "cluster"

    @property
    def is_neal(self) -> bool:
        return self != BenchmarkCase.CLUSTER

    @property
    def default_kernel(self) -> KernelFamily:
        if self == BenchmarkCase.CLUSTER:
            return KernelFamily.MATERN32
        return KernelFamily.SQUARED_EXPONENTIAL

    @classmethod
    def expand(cls, value: str) -> List['BenchmarkCase']:
        """Resolve a `--case` value, where `all` selects every case."""
        if value == "all":
            return list(cls)
        return [cls.from_string(value)]


__all__ = [
    'KernelFamily',
    'NoiseMode',
    'FitMethod',
    'BenchmarkMethod',
    'BenchmarkCase',
]
