from pathlib import Path

import click

from config import BENCHMARK_OUTPUT_DIR, MAX_FAILURE_FRACTION
from src.benchmark import render_table, run_benchmark, write_benchmark_outputs
from src.commands.base_command import BaseCommand
from src.errors import InvalidArgumentError
from src.utils import constants as codes
from src.utils.kernel_models import BenchmarkCase


class BenchmarkCommand(BaseCommand):
    """Reproduce the method comparison over seeded replicate training sets."""

    def validate(self) -> None:
        self.cases = BenchmarkCase.expand(self._get_required_param("case"))
        self.output_dir = Path(self._get_optional_param("out", BENCHMARK_OUTPUT_DIR))
        if self.settings.replicates < 1:
            raise InvalidArgumentError(f"--replicates must be >= 1, got {self.settings.replicates}")
        if self.settings.workers < 1:
            raise InvalidArgumentError(f"--workers must be >= 1, got {self.settings.workers}")
        if self.settings.cluster_n < 50:
            raise InvalidArgumentError(f"--cluster-n must be >= 50, got {self.settings.cluster_n}")

    def execute(self) -> int:
        report = run_benchmark(self.cases, self.settings)
        write_benchmark_outputs(report, self.output_dir)
        click.echo(render_table(report), nl=False)

        if report.failure_fraction > MAX_FAILURE_FRACTION:
            self.logger.error(
                f"{report.n_failed} of {len(report.records)} runs failed "
                f"(more than {MAX_FAILURE_FRACTION:.0%})"
            )
            return codes.EXIT_NUMERICAL_FAILURE
        return codes.EXIT_OK
