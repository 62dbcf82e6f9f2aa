from pathlib import Path

import click

from config import MODEL_FILE
from src.commands.base_command import BaseCommand
from src.csv_io import read_dataset_csv
from src.gp import fit
from src.itgp import itgp_fit
from src.model_store import save_model
from src.utils import constants as codes
from src.utils.kernel_models import FitMethod


class FitCommand(BaseCommand):
    """Fit a GP or ITGP model to a CSV dataset and save it as JSON."""

    def validate(self) -> None:
        self.input_path = Path(self._get_required_param("input_csv"))
        self._validate_file_exists(self.input_path, "Input CSV")
        self.output_path = Path(self._get_optional_param("out", MODEL_FILE))
        self.method = FitMethod.from_string(self.settings.method)
        self.spec = self.settings.kernel_spec()

    def execute(self) -> int:
        data = read_dataset_csv(self.input_path)

        if self.method == FitMethod.ITGP:
            model = itgp_fit(data, self.settings.itgp_config(self.spec))
            summary = f"n={data.n} inliers={model.inliers.size} trained={model.gp.n_train} c={model.c:.6g}"
        else:
            model = fit(data, self.spec, self.settings.optimizer_config())
            summary = f"n={data.n} inliers={data.n} trained={data.n} c=1"

        save_model(model, self.output_path)
        click.echo(f"{self.method.value} {self.spec.family.value} {summary} model={self.output_path}")
        return codes.EXIT_OK
