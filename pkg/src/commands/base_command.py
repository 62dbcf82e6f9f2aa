"""
Base command class for the CLI command pattern.
All subcommands inherit from this base class.
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Optional

import click
from loguru import logger

from src.errors import InvalidArgumentError, NumericalFailureError
from src.run_config import RunSettings
from src.utils import constants as codes


class BaseCommand(ABC):
    """
    Abstract base class for all commands.

    Each command represents one CLI subcommand and should:
    1. Validate inputs
    2. Execute the main logic
    3. Return an exit code
    Errors are mapped to exit codes in run(), never inside execute().
    """

    def __init__(self, parameters: Dict[str, Any], settings: Optional[RunSettings] = None):
        """
        Initialize command with parameters.

        Args:
            parameters: Subcommand arguments that are not run settings (paths, grid)
            settings: Resolved numerical settings
        """
        self.parameters = parameters
        self.settings = settings or RunSettings()
        self.logger = logger

    @abstractmethod
    def execute(self) -> int:
        """
        Execute the command.

        Returns:
            int: Exit code
        """
        pass

    @abstractmethod
    def validate(self) -> None:
        """
        Validate command parameters before execution.

        Raises:
            InvalidArgumentError: If parameters are invalid with descriptive message
        """
        pass

    def run(self) -> int:
        """
        Main entry point for command execution.
        Handles validation, execution, and error handling.

        Returns:
            int: 0 on success, 2 on invalid input, 3 on numerical failure, 1 otherwise
        """
        name = self.__class__.__name__
        try:
            self.logger.debug(f"🔍 Validating {name}...")
            self.validate()

            self.logger.debug(f"▶️  Executing {name}...")
            code = self.execute()

            if code == codes.EXIT_OK:
                self.logger.debug(f"✅ {name} completed successfully")
            else:
                self.logger.error(f"❌ {name} finished with exit code {code}")
            return code

        except InvalidArgumentError as e:
            self.logger.error(f"❌ {name}: {e}")
            click.echo(f"Error: {e}", err=True)
            return codes.EXIT_INVALID_INPUT
        except NumericalFailureError as e:
            self.logger.error(f"❌ {name} numerical failure: {e}")
            click.echo(f"Numerical failure: {e}", err=True)
            return codes.EXIT_NUMERICAL_FAILURE
        except Exception as e:
            self.logger.error(f"💥 {name} error: {e}")
            self.logger.exception(e)
            return codes.EXIT_UNEXPECTED

    def _get_required_param(self, key: str, param_type: type = str) -> Any:
        """
        Get a required parameter and validate its type.

        Raises:
            InvalidArgumentError: If parameter is missing or has wrong type
        """
        if key not in self.parameters or self.parameters[key] is None:
            raise InvalidArgumentError(f"Missing required parameter: '{key}'")

        value = self.parameters[key]

        if not isinstance(value, param_type):
            raise InvalidArgumentError(
                f"Parameter '{key}' has wrong type. "
                f"Expected {param_type.__name__}, got {type(value).__name__}"
            )

        return value

    def _get_optional_param(self, key: str, default: Any = None) -> Any:
        value = self.parameters.get(key)
        return default if value is None else value

    def _validate_file_exists(self, file_path: Path, file_description: str = "File") -> None:
        """
        Validate that a file exists.

        Raises:
            InvalidArgumentError: If file does not exist
        """
        if not file_path.exists():
            raise InvalidArgumentError(f"{file_description} does not exist: {file_path}")

        if not file_path.is_file():
            raise InvalidArgumentError(f"{file_description} is not a file: {file_path}")
