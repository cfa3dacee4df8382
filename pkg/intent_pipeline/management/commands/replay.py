import logging
from typing import Any, List

from django.core.management.base import CommandParser

from intent_pipeline.behavior.tags import TagCatalog
from intent_pipeline.decorators import execution_tracker
from intent_pipeline.harness.clock import build_clock
from intent_pipeline.harness.metrics import build_report
from intent_pipeline.harness.policy import PolicySpec
from intent_pipeline.harness.replay import replay_sessions
from intent_pipeline.harness.report import emit_report, write_traces
from intent_pipeline.harness.sessions import load_ground_truth, load_sessions
from intent_pipeline.management.base import PipelineCommand
from intent_pipeline.settings.manager import SettingsManager
from intent_pipeline.utils.get_conf import (
    get_drift_config,
    get_harness_config,
    get_pipeline,
)

logger = logging.getLogger(__name__)


class Command(PipelineCommand):
    """Replay recorded sessions through the pipeline and report the metrics.

    Each ``--policy`` becomes one entry of the report (one CSV row). With
    ``--ground-truth`` the report includes shift detection precision and
    recall.

    """

    help = "Replay sessions under trigger policies and write a metrics report"

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--sessions", required=True, help="Session JSONL file.")
        parser.add_argument(
            "--policy",
            action="append",
            dest="policies",
            default=None,
            help="always, every-k=K or drift; may be repeated (default: drift).",
        )
        parser.add_argument("--catalog", required=True, help="item<TAB>tag catalog.")
        parser.add_argument("--out", required=True, help="Report path.")
        parser.add_argument("--format", choices=["json", "csv"], default="json")
        parser.add_argument("--jobs", type=int, default=1)
        parser.add_argument(
            "--seed", type=int, default=None, help="Recorded in the report header."
        )
        parser.add_argument(
            "--ground-truth", default=None, help="JSON map of user to shift indices."
        )
        parser.add_argument(
            "--trace-out", default=None, help="Write every trace record as JSONL."
        )

    @execution_tracker(logging_level=logging.INFO)
    def run(self, manager: SettingsManager, **options: Any) -> None:
        drift = get_drift_config(manager)
        policies: List[PolicySpec] = [
            PolicySpec.parse(text, drift) for text in options["policies"] or ["drift"]
        ]
        harness = get_harness_config(manager)

        catalog = TagCatalog.from_tsv(options["catalog"])
        components = get_pipeline(catalog, manager)
        sessions = load_sessions(options["sessions"])
        truth = (
            load_ground_truth(options["ground_truth"])
            if options["ground_truth"]
            else None
        )
        clock = build_clock(harness.clock)

        traces = replay_sessions(
            sessions, policies, components, clock, jobs=options["jobs"]
        )
        report = build_report(
            traces,
            ground_truth=truth,
            match_window=harness.match_window,
            ranks=harness.percentile_ranks,
            seed=options["seed"],
            clock=clock.name,
        )
        emit_report(report, options["out"], options["format"])
        if options["trace_out"]:
            count = write_traces(options["trace_out"], traces)
            logger.info("Wrote %d trace record(s) to %s", count, options["trace_out"])

        self.stdout.write(
            self.style.SUCCESS(
                f"Replayed {len(sessions)} session(s) under "
                f"{len(policies)} polic{'y' if len(policies) == 1 else 'ies'}; "
                f"report written to {options['out']}"
            )
        )
