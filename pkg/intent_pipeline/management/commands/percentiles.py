import json
from typing import Any, List, Optional

from django.core.management.base import CommandParser

from intent_pipeline.exceptions import ConfigurationError, DataError, MalformedRecord
from intent_pipeline.harness.metrics import compute_percentiles, percentile_label
from intent_pipeline.harness.report import REPORT_DECIMALS
from intent_pipeline.management.base import PipelineCommand
from intent_pipeline.settings.manager import SettingsManager


def parse_ranks(text: Optional[str], default: List[float]) -> List[float]:
    if not text:
        return list(default)
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigurationError(f"invalid percentile ranks {text!r}") from e


def load_latencies(path: str) -> List[float]:
    """Read a JSON list of numbers, or one number per line."""
    with open(path, "rb") as infile:
        raw = infile.read()
    try:
        content = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line_number = raw[: e.start].count(b"\n") + 1
        raise MalformedRecord(line_number, "invalid UTF-8", path) from e
    if content.lstrip().startswith("["):
        try:
            values = json.loads(content)
        except json.JSONDecodeError as e:
            raise DataError(f"{path} is not a valid JSON list: {e}") from e
        if not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
        ):
            raise DataError(f"{path} must hold numbers only")
        return [float(v) for v in values]

    latencies = []
    for line_number, line in enumerate(content.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            latencies.append(float(line))
        except ValueError as e:
            raise MalformedRecord(line_number, f"not a number: {line.strip()!r}", path) from e
    return latencies


class Command(PipelineCommand):
    """Print nearest-rank percentiles of a latency file, one rank per line."""

    help = "Compute nearest-rank latency percentiles"

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument(
            "--in", dest="input", required=True, help="Latency file (JSON list or lines)."
        )
        parser.add_argument(
            "--ranks", default=None, help="Comma-separated ranks (default: config)."
        )

    def run(self, manager: SettingsManager, **options: Any) -> None:
        ranks = parse_ranks(options["ranks"], manager.percentile_ranks)
        values = compute_percentiles(load_latencies(options["input"]), ranks)
        for rank, value in values.items():
            self.stdout.write(f"{percentile_label(rank)}\t{round(value, REPORT_DECIMALS)}")
