import logging
import logging.config
from typing import Any, Dict

from intent_pipeline.constants import ALLOWED_LOG_FORMAT_TYPES
from intent_pipeline.constants.config_types import LogFormatType, LogLevel

PIPELINE_LOGGER = "intent_pipeline"


class LogConfig:
    """Console logging options for the ``intent_pipeline`` logger tree.

    Attributes:
        log_level (str): Threshold of the console handler.
        format_type (str): NORMAL, JSON or FLAT.
        log_format (str): ``%``-style format; structured formatters emit its fields.
        log_date_format (str): ``strftime`` format for ``asctime``.

    """

    def __init__(
        self,
        log_level: LogLevel,
        format_type: LogFormatType,
        log_format: str,
        log_date_format: str,
    ) -> None:
        if format_type not in ALLOWED_LOG_FORMAT_TYPES:
            raise ValueError(f"unknown log format type {format_type!r}")
        self.log_level = log_level
        self.format_type = format_type
        self.log_format = log_format
        self.log_date_format = log_date_format


class LogManager:
    """Builds and applies the ``dictConfig`` for a ``LogConfig``."""

    def __init__(self, log_config: LogConfig) -> None:
        self.log_config = log_config

    def build_config(self) -> Dict[str, Any]:
        formatter: Dict[str, Any] = {
            "format": self.log_config.log_format,
            "datefmt": self.log_config.log_date_format,
        }
        if self.log_config.format_type != "NORMAL":
            formatter["()"] = (
                f"intent_pipeline.formatters.{self.log_config.format_type}Formatter"
            )

        return {
            "version": 1,
            "disable_existing_loggers": False,
            "filters": {
                "context_var_filter": {
                    "()": "intent_pipeline.filters.ContextVarFilter",
                },
            },
            "formatters": {"console": formatter},
            "handlers": {
                "console": {
                    "class": "logging.StreamHandler",
                    "formatter": "console",
                    "level": self.log_config.log_level,
                    "filters": ["context_var_filter"],
                },
            },
            "loggers": {
                PIPELINE_LOGGER: {
                    "level": self.log_config.log_level,
                    "handlers": ["console"],
                    "propagate": False,
                },
            },
        }

    def set_conf(self) -> None:
        logging.config.dictConfig(self.build_config())
