import logging
from typing import Any, Optional

from django.core.management.base import BaseCommand, CommandError, CommandParser

from intent_pipeline.constants import (
    EXIT_CONFIG_ERROR,
    EXIT_DATA_ERROR,
    EXIT_GENERATION_ERROR,
)
from intent_pipeline.exceptions import ConfigurationError, DataError, GenerationFailed
from intent_pipeline.settings.checks import run_config_checks
from intent_pipeline.settings.manager import SettingsManager
from intent_pipeline.utils.files import load_config_file
from intent_pipeline.utils.get_conf import get_config
from intent_pipeline.utils.set_conf import set_config

logger = logging.getLogger(__name__)


class PipelineCommand(BaseCommand):
    """Base of the pipeline commands.

    Every command accepts ``--config`` (TOML or JSON, layered over the
    ``INTENT_PIPELINE`` setting), validates the merged settings, applies
    the logging configuration and maps pipeline errors to exit codes:
    2 for configuration, 3 for data and 4 for an unavailable backend.

    """

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument(
            "--config",
            default=None,
            help="TOML or JSON config file with dotted pipeline keys.",
        )
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser: CommandParser) -> None:
        """Hook for command specific arguments."""

    def load_settings(self, config_path: Optional[str]) -> SettingsManager:
        try:
            overrides = load_config_file(config_path) if config_path else None
            manager = SettingsManager(overrides)
        except (ConfigurationError, ValueError) as e:
            raise CommandError(str(e), returncode=EXIT_CONFIG_ERROR) from e

        errors = run_config_checks(manager)
        if errors:
            details = "\n".join(f"{error.id}: {error.msg} {error.hint}" for error in errors)
            raise CommandError(
                f"Invalid configuration:\n{details}", returncode=EXIT_CONFIG_ERROR
            )

        set_config(**get_config(manager), auto_initialization=manager.auto_initialization_enabled)
        return manager

    def handle(self, *args: Any, **options: Any) -> None:
        manager = self.load_settings(options.get("config"))
        try:
            self.run(manager, **options)
        except ConfigurationError as e:
            logger.error("Configuration error: %s", e)
            raise CommandError(str(e), returncode=EXIT_CONFIG_ERROR) from e
        except GenerationFailed as e:
            logger.error("Generation backend unavailable: %s", e)
            raise CommandError(str(e), returncode=EXIT_GENERATION_ERROR) from e
        except (DataError, OSError, UnicodeDecodeError) as e:
            logger.error("Data error: %s", e)
            raise CommandError(str(e), returncode=EXIT_DATA_ERROR) from e

    def run(self, manager: SettingsManager, **options: Any) -> None:
        """Execute the command with the validated settings."""
        raise NotImplementedError
