import csv
import io
import json
import logging
import os
from typing import Any, Dict, List, Mapping, Sequence

from intent_pipeline.constants.config_types import ReportFormat
from intent_pipeline.exceptions import ConfigurationError, DataError
from intent_pipeline.harness.replay import ReplayTrace
from intent_pipeline.utils.files import write_jsonl

logger = logging.getLogger(__name__)

REPORT_DECIMALS = 6

SCALAR_COLUMNS = (
    "policy",
    "users",
    "event_count",
    "trigger_count",
    "trigger_rate",
    "bootstrap_count",
    "generation_failures",
    "prompt_failures",
    "precision",
    "recall",
)


def round_floats(value: Any) -> Any:
    """Round every float in a nested report to six decimals."""
    if isinstance(value, float):
        return round(value, REPORT_DECIMALS)
    if isinstance(value, dict):
        return {key: round_floats(item) for key, item in value.items()}
    if isinstance(value, list):
        return [round_floats(item) for item in value]
    return value


def report_rows(report: Mapping[str, Any]) -> List[Dict[str, Any]]:
    """Flatten the per-policy entries into one CSV row each."""
    rows = []
    for entry in report["policies"]:
        row = {column: entry[column] for column in SCALAR_COLUMNS}
        row.update(entry["latency_percentiles_ms"])
        row.update(
            (f"{stage}_mean_ms", value)
            for stage, value in entry["stage_mean_latency_ms"].items()
        )
        rows.append(row)
    return rows


def render_report(report: Mapping[str, Any], fmt: ReportFormat = "json") -> str:
    if not report.get("policies"):
        raise DataError("the report holds no policy")
    rounded = round_floats(dict(report))
    if fmt == "json":
        return json.dumps(rounded, indent=2) + "\n"
    if fmt == "csv":
        rows = report_rows(rounded)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if v is None else v for k, v in row.items()})
        return buffer.getvalue()
    raise ConfigurationError(f"unknown report format {fmt!r}; use json or csv")


def emit_report(
    report: Mapping[str, Any], path: str, fmt: ReportFormat = "json"
) -> None:
    """Write ``report`` to ``path``; the same report always yields the same bytes.

    IO errors propagate unchanged.

    """
    content = render_report(report, fmt)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as outfile:
        outfile.write(content)
    logger.info("Wrote %s report to %s", fmt, path)


def write_traces(path: str, traces: Sequence[ReplayTrace]) -> int:
    """Dump every trace record as JSONL, tagged with its user and policy."""
    return write_jsonl(
        path,
        (
            {"user": trace.user, "policy": trace.policy, **record.to_record()}
            for trace in traces
            for record in trace.records
        ),
    )
