import logging
import os
import time
from functools import wraps
from typing import Any, Callable, Optional

from intent_pipeline.utils.time import format_elapsed_time
from intent_pipeline.validators.config_validators import (
    validate_boolean_setting,
    validate_integer_setting,
    validate_positive_number,
)

logger = logging.getLogger(__name__)


def execution_tracker(
    logging_level: int = logging.INFO,
    slow_threshold_seconds: Optional[float] = None,
    slow_warning: bool = False,
) -> Callable:
    """Decorator to log the wall execution time of a pipeline entry point
    (a session replay, a corpus build, a command handler), along with the
    function's module, file, and line number.

    Args:
        logging_level (int): The logging level at which to log the timing
            (default is logging.INFO).
        slow_threshold_seconds (Optional[float]): Optional threshold in
            seconds. Runs slower than this are flagged in the message
            (default is None).
        slow_warning (bool): Whether to also log a warning when the
            threshold is exceeded.

    Returns:
        Callable: A decorator that logs execution details.

    Raises:
        ValueError: If any of the provided arguments is invalid.

    """
    errors = []
    errors.extend(
        validate_integer_setting(logging_level, "execution_tracker.logging_level")
    )
    if slow_threshold_seconds is not None:
        errors.extend(
            validate_positive_number(
                slow_threshold_seconds, "execution_tracker.slow_threshold_seconds"
            )
        )
    errors.extend(
        validate_boolean_setting(slow_warning, "execution_tracker.slow_warning")
    )

    if errors:
        raise ValueError(errors[0])  # raises the first error to be fixed

    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.error(
                    "Error executing function '%s': %s",
                    func.__qualname__,
                    str(e),
                    exc_info=True,
                )
                raise

            elapsed_time = time.perf_counter() - start_time
            function_name = func.__qualname__
            log_message = (
                f"Performance Metrics for Function: '{function_name}'\n"
                f"  Module: {func.__module__}\n"
                f"  File: {os.path.abspath(func.__code__.co_filename)}, "
                f"Line: {func.__code__.co_firstlineno}\n"
                f"  Execution Time: {format_elapsed_time(elapsed_time)}"
            )
            if slow_threshold_seconds is not None and elapsed_time > slow_threshold_seconds:
                log_message += f" (exceeds threshold of {slow_threshold_seconds}s)"
                if slow_warning:
                    logger.warning(
                        "Function '%s' took %.3fs, above the %ss threshold",
                        function_name,
                        elapsed_time,
                        slow_threshold_seconds,
                    )

            logger.log(logging_level, log_message)
            return result

        return wrapper

    return decorator
