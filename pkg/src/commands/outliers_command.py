from pathlib import Path

import click
import pandas as pd

from src.commands.base_command import BaseCommand
from src.csv_io import read_dataset_csv, write_dataset_csv, write_frame_csv
from src.errors import InvalidArgumentError
from src.itgp import ITGPResult, detect_outliers
from src.model_store import load_model
from src.utils import constants as cols


class OutliersCommand(BaseCommand):
    """List the rows whose consistency-corrected residual exceeds the threshold."""

    def validate(self) -> None:
        self.model_path = Path(self._get_required_param("model_json"))
        self.input_path = Path(self._get_required_param("input_csv"))
        self._validate_file_exists(self.input_path, "Input CSV")
        self.threshold = float(self.settings.threshold)
        if not self.threshold > 0:
            raise InvalidArgumentError(f"--threshold must be positive, got {self.threshold}")
        self.output_path = self._get_optional_param("out")
        self.clean_path = self._get_optional_param("clean_out")

    def execute(self) -> int:
        model = load_model(self.model_path)
        result = model if isinstance(model, ITGPResult) else ITGPResult.from_gp(model)
        data = read_dataset_csv(self.input_path)

        flagged = detect_outliers(result, data, self.threshold)
        scores = result.outlier_scores(data)
        frame = pd.DataFrame({
            cols.INDEX: flagged,
            cols.X: data.x[flagged],
            cols.Y: data.y[flagged],
            cols.R_PRIME: scores[flagged],
        })
        self.logger.info(f"{flagged.size} of {data.n} rows exceed r' > {self.threshold}")

        text = write_frame_csv(frame, self.output_path)
        if text is not None:
            click.echo(text, nl=False)
        if self.clean_path:
            write_dataset_csv(result.purified(data, self.threshold), self.clean_path)
        return cols.EXIT_OK
