"""
Command-line front end: fit, predict, outliers, benchmark.

Numerical flags default to None so that a value from --config can apply;
the effective defaults from config.py are shown in --help.
"""
from typing import Any, Callable, Dict, Optional

import click

import config
from src.commands import BenchmarkCommand, FitCommand, OutliersCommand, PredictCommand
from src.errors import InvalidArgumentError
from src.logger_config import init_loguru_logger
from src.run_config import resolve_settings
from src.utils import constants as codes
from src.utils.kernel_models import BenchmarkCase, FitMethod, KernelFamily

LOG_LEVELS = [codes.DEBUG, codes.INFO, codes.WARNING, codes.ERROR, codes.CRITICAL]


def _kernel_option(default_text: str):
    return click.option(
        "--kernel", type=click.Choice(KernelFamily.get_choices_list()), default=None,
        help=f"Kernel family, always summed with white noise. [default: {default_text}]",
    )


def _trimming_options(func: Callable) -> Callable:
    options = [
        click.option("--alpha1", type=float, default=None,
                     help=f"Trimming fraction kept after shrinking. [default: {config.ALPHA1}]"),
        click.option("--alpha2", type=float, default=None,
                     help=f"Reweighting fraction, 0 disables reweighting. [default: {config.ALPHA2}]"),
        click.option("--n-shrink", type=int, default=None,
                     help=f"Iterations over which alpha shrinks from 1 to alpha1. [default: {config.N_SHRINK}]"),
        click.option("--n-maxiter", type=int, default=None,
                     help=f"Maximum concentration iterations. [default: {config.N_MAXITER}]"),
        click.option("--restarts", type=int, default=None,
                     help=f"Optimizer restarts per GP fit. [default: {config.N_RESTARTS}]"),
        click.option("--seed", type=int, default=None,
                     help=f"Seed for restarts (and data generation in benchmark). [default: {config.SEED}]"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _run(ctx: click.Context, command_cls, parameters: Dict[str, Any], flags: Dict[str, Any]) -> None:
    try:
        settings = resolve_settings(flags, ctx.obj.get("config_path"))
    except InvalidArgumentError as e:
        click.echo(f"Error: {e}", err=True)
        ctx.exit(codes.EXIT_INVALID_INPUT)
        return
    ctx.exit(command_cls(parameters, settings).run())


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="YAML file with setting overrides (keys as flag names with underscores).")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help=f"Console log level. [default: {config.LOG_LEVEL}]")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], log_level: Optional[str]) -> None:
    """Robust Gaussian-process regression with iterative trimming."""
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path
    if log_level:
        init_loguru_logger(level=log_level.upper())


@cli.command("fit")
@click.argument("input_csv", type=click.Path(dir_okay=False))
@_kernel_option(config.KERNEL)
@click.option("--method", type=click.Choice(FitMethod.get_choices_list()), default=None,
              help=f"Standard GP or iterative trimming GP. [default: {config.METHOD}]")
@_trimming_options
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help=f"Model JSON output path. [default: {config.MODEL_FILE}]")
@click.pass_context
def fit_cmd(ctx, input_csv, out, **flags):
    """Fit a model to INPUT_CSV (columns x,y) and write model JSON."""
    _run(ctx, FitCommand, {"input_csv": input_csv, "out": out}, flags)


@cli.command("predict")
@click.argument("model_json", type=click.Path(dir_okay=False))
@click.option("--query", type=click.Path(dir_okay=False), default=None, help="CSV with an x column.")
@click.option("--grid", type=str, default=None, help="Evenly spaced query grid lo:hi:m.")
@_kernel_option("taken from the model")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Prediction CSV path. [default: standard output]")
@click.pass_context
def predict_cmd(ctx, model_json, query, grid, out, **flags):
    """Predict x,mean,sd_latent,sd_observed[,sd_scaled] from MODEL_JSON."""
    _run(ctx, PredictCommand, {"model_json": model_json, "query": query, "grid": grid, "out": out}, flags)


@cli.command("outliers")
@click.argument("model_json", type=click.Path(dir_okay=False))
@click.argument("input_csv", type=click.Path(dir_okay=False))
@click.option("--threshold", type=float, default=None,
              help=f"Flag rows with r' = d / sqrt(c) above this. [default: {config.OUTLIER_THRESHOLD}]")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Outlier CSV path. [default: standard output]")
@click.option("--clean-out", type=click.Path(dir_okay=False), default=None,
              help="Also write INPUT_CSV without the flagged rows.")
@click.pass_context
def outliers_cmd(ctx, model_json, input_csv, out, clean_out, **flags):
    """Write index,x,y,r_prime for rows of INPUT_CSV flagged as outliers."""
    _run(ctx, OutliersCommand,
         {"model_json": model_json, "input_csv": input_csv, "out": out, "clean_out": clean_out}, flags)


@cli.command("benchmark")
@click.option("--case", type=click.Choice(BenchmarkCase.get_choices_list() + ["all"]), default="fiducial",
              show_default=True, help="Contamination scenario.")
@click.option("--replicates", type=int, default=None,
              help=f"Training sets per case. [default: {config.REPLICATES}]")
@click.option("--workers", type=int, default=None,
              help=f"Worker processes for replicates. [default: {config.WORKERS}]")
@_kernel_option("se for Neal cases, matern32 for cluster")
@_trimming_options
@click.option("--b-o", "b_o", type=float, default=None,
              help=f"Outlier bias of the skewed case. [default: {config.NEAL_SKEWED_BIAS}]")
@click.option("--cluster-n", type=int, default=None,
              help=f"Training-set size of the cluster case. [default: {config.CLUSTER_N_TRAIN}]")
@click.option("--out", type=click.Path(file_okay=False), default=None,
              help=f"Output directory. [default: {config.BENCHMARK_OUTPUT_DIR}]")
@click.pass_context
def benchmark_cmd(ctx, case, out, **flags):
    """Compare gp, itgp, itgp-reweight and ideal on synthetic data."""
    _run(ctx, BenchmarkCommand, {"case": case, "out": out}, flags)


def main() -> None:
    cli(obj={})
