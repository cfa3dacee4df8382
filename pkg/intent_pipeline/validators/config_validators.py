import math
import os
import re
from typing import Any, Iterable, List, Optional, Sequence
from urllib.parse import urlparse

from django.core.checks import Error

from intent_pipeline.constants import DATE_FORMAT_DIRECTIVES, LOG_FORMAT_SPECIFIERS

SUM_TOLERANCE = 1e-9


def _is_number(value: Any) -> bool:
    return (
        isinstance(value, (int, float))
        and not isinstance(value, bool)
        and math.isfinite(value)
    )


def validate_choice(value: Any, config_name: str, allowed: Sequence[str]) -> List[Error]:
    errors = []
    if value not in allowed:
        errors.append(
            Error(
                f"Invalid value {value!r} for {config_name}.",
                hint=f"Valid values are: {list(allowed)}.",
                id=f"intent_pipeline.E001_{config_name}",
            )
        )
    return errors


def validate_positive_number(
    value: Any, config_name: str, allow_zero: bool = False
) -> List[Error]:
    errors = []
    if not _is_number(value) or value < 0 or (value == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        errors.append(
            Error(
                f"{config_name} is not a valid number.",
                hint=f"Ensure {config_name} is a finite number {bound}.",
                id=f"intent_pipeline.E002_{config_name}",
            )
        )
    return errors


def validate_integer_setting(value: Any, config_name: str, minimum: int = 0) -> List[Error]:
    errors: List[Error] = []
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        errors.append(
            Error(
                f"{config_name} is not a valid integer.",
                hint=f"Ensure {config_name} is an integer >= {minimum}.",
                id=f"intent_pipeline.E003_{config_name}",
            )
        )
    return errors


def validate_boolean_setting(value: Any, config_name: str) -> List[Error]:
    errors: List[Error] = []
    if not isinstance(value, bool):
        errors.append(
            Error(
                f"{config_name} is not a boolean.",
                hint=f"Ensure {config_name} is either True or False.",
                id=f"intent_pipeline.E004_{config_name}",
            )
        )
    return errors


def validate_unit_interval(value: Any, config_name: str) -> List[Error]:
    errors = []
    if not _is_number(value) or not 0.0 <= value <= 1.0:
        errors.append(
            Error(
                f"{config_name} must lie in [0, 1].",
                hint=f"Set {config_name} to a number between 0 and 1.",
                id=f"intent_pipeline.E005_{config_name}",
            )
        )
    return errors


def validate_weights(values: Iterable[Any], config_name: str) -> List[Error]:
    """Weights must be non-negative numbers summing to 1 within 1e-9."""
    values = list(values)
    errors = []
    if not values or not all(_is_number(v) and v >= 0 for v in values):
        errors.append(
            Error(
                f"{config_name} holds a negative or non-numeric weight.",
                hint=f"Ensure every weight in {config_name} is a number >= 0.",
                id=f"intent_pipeline.E006_{config_name}",
            )
        )
    elif abs(sum(values) - 1.0) > SUM_TOLERANCE:
        errors.append(
            Error(
                f"{config_name} sums to {sum(values)}, not 1.",
                hint=f"Rescale {config_name} so the weights sum to 1.",
                id=f"intent_pipeline.E007_{config_name}",
            )
        )
    return errors


def validate_format_string(format_str: Any, config_name: str) -> List[Error]:
    errors = []
    if not isinstance(format_str, str) or not format_str:
        errors.append(
            Error(
                f"{config_name} is not a non-empty string.",
                hint=f"Ensure {config_name} is a logging format string.",
                id=f"intent_pipeline.E008_{config_name}",
            )
        )
        return errors

    specifiers = re.findall(r"%\((.*?)\)", format_str)
    invalid = [spec for spec in specifiers if spec not in LOG_FORMAT_SPECIFIERS]
    if not specifiers or invalid:
        errors.append(
            Error(
                f"{config_name} has missing or invalid format specifiers: {invalid}.",
                hint=f"Valid specifiers are: {list(LOG_FORMAT_SPECIFIERS)}.",
                id=f"intent_pipeline.E009_{config_name}",
            )
        )
    return errors


def validate_date_format(date_format: Any, config_name: str) -> List[Error]:
    errors = []
    if not isinstance(date_format, str):
        errors.append(
            Error(
                f"{config_name} is not a string.",
                hint=f"Ensure {config_name} is a valid date format string.",
                id=f"intent_pipeline.E010_{config_name}",
            )
        )
        return errors

    invalid = set(re.findall(r"%[a-zA-Z]", date_format)) - DATE_FORMAT_DIRECTIVES
    if invalid:
        errors.append(
            Error(
                f"{config_name} contains invalid format directives.",
                hint=f"Invalid directives: {', '.join(sorted(invalid))}.",
                id=f"intent_pipeline.E011_{config_name}",
            )
        )
    return errors


def validate_optional_file(path: Optional[Any], config_name: str) -> List[Error]:
    errors = []
    if path is None:
        return errors
    if not isinstance(path, str) or not os.path.isfile(path):
        errors.append(
            Error(
                f"The file set in {config_name} does not exist.",
                hint=f"Point {config_name} at a readable file or leave it unset.",
                id=f"intent_pipeline.E012_{config_name}",
            )
        )
    return errors


def validate_endpoint(url: Optional[Any], config_name: str, required: bool) -> List[Error]:
    errors = []
    if url is None and not required:
        return errors
    parsed = urlparse(url) if isinstance(url, str) else None
    if parsed is None or parsed.scheme not in ("http", "https") or not parsed.netloc:
        errors.append(
            Error(
                f"{config_name} is not a valid http(s) URL.",
                hint=f"Set {config_name} to the URL of the remote endpoint.",
                id=f"intent_pipeline.E013_{config_name}",
            )
        )
    return errors


def validate_string_list(values: Any, config_name: str) -> List[Error]:
    errors = []
    if (
        not isinstance(values, list)
        or not values
        or not all(isinstance(v, str) and v for v in values)
        or len(set(values)) != len(values)
    ):
        errors.append(
            Error(
                f"{config_name} is not a list of unique non-empty strings.",
                hint=f"Ensure {config_name} lists at least one distinct name.",
                id=f"intent_pipeline.E014_{config_name}",
            )
        )
    return errors


def validate_percentile_ranks(ranks: Any, config_name: str) -> List[Error]:
    errors = []
    if (
        not isinstance(ranks, list)
        or not ranks
        or not all(_is_number(rank) and 0 < rank <= 100 for rank in ranks)
    ):
        errors.append(
            Error(
                f"{config_name} must list percentile ranks in (0, 100].",
                hint="For example [50, 75, 90, 95].",
                id=f"intent_pipeline.E015_{config_name}",
            )
        )
    return errors


def validate_finite_number(value: Any, config_name: str) -> List[Error]:
    errors = []
    if not _is_number(value):
        errors.append(
            Error(
                f"{config_name} is not a finite number.",
                hint=f"Set {config_name} to a real number.",
                id=f"intent_pipeline.E016_{config_name}",
            )
        )
    return errors
