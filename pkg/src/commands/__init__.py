"""
Command modules for the CLI
Each command represents one subcommand
"""
from .base_command import BaseCommand
from .benchmark_command import BenchmarkCommand
from .fit_command import FitCommand
from .outliers_command import OutliersCommand
from .predict_command import PredictCommand

__all__ = ['BaseCommand', 'FitCommand', 'PredictCommand', 'OutliersCommand', 'BenchmarkCommand']
