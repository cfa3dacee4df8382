import logging
from typing import Optional

from django.core.exceptions import ImproperlyConfigured

from intent_pipeline.constants.config_types import LogFormatType, LogLevel
from intent_pipeline.settings.conf import LogConfig, LogManager


def set_config(
    log_level: LogLevel,
    format_type: LogFormatType,
    log_format: str,
    log_date_format: str,
    auto_initialization: Optional[bool] = None,
) -> None:
    """Sets up console logging for the ``intent_pipeline`` logger tree.

    Configuration is skipped when automatic initialization is disabled.
    A bad configuration never stops the host application: a warning is
    emitted and the system checks report the details.

    Args:
        log_level (LogLevel): Threshold of the console handler.
        format_type (LogFormatType): NORMAL, JSON or FLAT.
        log_format (str): The ``%``-style format of console records.
        log_date_format (str): The date format used in log entries.
        auto_initialization (Optional[bool]): Overrides
            ``logging.auto_initialization`` when given.

    Example:
        >>> set_config(
        ...     log_level="DEBUG",
        ...     format_type="JSON",
        ...     log_format="%(asctime)s %(levelname)s %(context)s %(message)s",
        ...     log_date_format="%Y-%m-%d %H:%M:%S",
        ... )

    """
    if auto_initialization is None:
        from intent_pipeline.utils.get_conf import is_auto_initialization_enabled

        auto_initialization = is_auto_initialization_enabled()
    if not auto_initialization:
        return

    try:
        log_config = LogConfig(log_level, format_type, log_format, log_date_format)
        LogManager(log_config).set_conf()
    except (ValueError, TypeError, ImproperlyConfigured, AttributeError):
        logging.warning(
            "\n"
            "========================INTENT PIPELINE========================\n"
            "[CONFIGURATION ERROR] A logging configuration issue has been detected.\n"
            "System checks will be run to provide more detailed information.\n"
            "===============================================================\n"
        )
        return

    logging.getLogger(__name__).debug(
        "Logging initialized: level=%s, format type=%s", log_level, format_type
    )
