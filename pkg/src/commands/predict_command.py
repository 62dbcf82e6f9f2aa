import math
from pathlib import Path
from typing import Optional

import click
import numpy as np
import pandas as pd

from src.commands.base_command import BaseCommand
from src.csv_io import read_query_csv, write_frame_csv
from src.errors import InvalidArgumentError, ModelFormatError
from src.itgp import ITGPResult
from src.model_store import load_model
from src.utils import constants as cols
from src.utils.kernel_models import KernelFamily


def parse_grid(value: str) -> np.ndarray:
    """Parse `lo:hi:m` into m evenly spaced points."""
    parts = value.split(":")
    if len(parts) != 3:
        raise InvalidArgumentError(f"Grid must look like lo:hi:m, got '{value}'")
    try:
        lo, hi, m = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise InvalidArgumentError(f"Invalid grid '{value}': {e}") from e
    if not (math.isfinite(lo) and math.isfinite(hi)) or m < 1:
        raise InvalidArgumentError(f"Invalid grid '{value}': bounds must be finite and m >= 1")
    return np.linspace(lo, hi, m)


class PredictCommand(BaseCommand):
    """Predict mean and standard deviations from a saved model."""

    def validate(self) -> None:
        self.model_path = Path(self._get_required_param("model_json"))
        query: Optional[str] = self._get_optional_param("query")
        grid: Optional[str] = self._get_optional_param("grid")
        if (query is None) == (grid is None):
            raise InvalidArgumentError("Give exactly one of --query or --grid")
        self.query_path = None if query is None else Path(query)
        if self.query_path is not None:
            self._validate_file_exists(self.query_path, "Query CSV")
        self.grid = grid
        self.output_path = self._get_optional_param("out")

    def execute(self) -> int:
        model = load_model(self.model_path)
        gp = model.gp if isinstance(model, ITGPResult) else model
        if self.settings.kernel and KernelFamily.from_string(self.settings.kernel) != gp.spec.family:
            raise ModelFormatError(
                f"Model uses kernel '{gp.spec.family.value}' but --kernel {self.settings.kernel} was given"
            )

        x = read_query_csv(self.query_path) if self.query_path is not None else parse_grid(self.grid)
        prediction = gp.predict(x)
        frame = pd.DataFrame({
            cols.X: x,
            cols.MEAN: prediction.mean,
            cols.SD_LATENT: prediction.sd_latent,
            cols.SD_OBSERVED: prediction.sd_observed,
        })
        if isinstance(model, ITGPResult):
            frame[cols.SD_SCALED] = prediction.sd_observed * math.sqrt(model.c)

        text = write_frame_csv(frame, self.output_path)
        if text is not None:
            click.echo(text, nl=False)
        return cols.EXIT_OK
