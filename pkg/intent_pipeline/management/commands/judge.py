import json
import logging
from typing import Any, Dict, List, Optional

from django.core.management.base import CommandParser

from intent_pipeline.behavior.events import BehaviorEvent, BehaviorWindow, WindowPolicy
from intent_pipeline.exceptions import DataError, MalformedRecord
from intent_pipeline.generation.factory import build_remote_client
from intent_pipeline.harness.report import round_floats
from intent_pipeline.judge.scoring import (
    JudgeScores,
    JudgeWeights,
    RemoteJudge,
    aggregate,
    mean_total,
    parse_scores,
)
from intent_pipeline.management.base import PipelineCommand
from intent_pipeline.settings.manager import SettingsManager
from intent_pipeline.utils.files import iter_jsonl
from intent_pipeline.utils.get_conf import get_generator_config, get_judge_weights

logger = logging.getLogger(__name__)


def behavior_window(raw: Any) -> BehaviorWindow:
    if not isinstance(raw, list) or not raw:
        raise DataError("'behavior' must be a non-empty list of events")
    events = sorted(
        (BehaviorEvent.from_record(record) for record in raw),
        key=lambda event: event.timestamp,
    )
    return BehaviorWindow(tuple(events), WindowPolicy.count(len(events)))


class Command(PipelineCommand):
    """Score generated queries with the three-criterion judge.

    Each sample line holds ``behavior`` (event records), ``query`` and
    optionally ``response``, the raw judge output. Samples without a
    response are sent to ``judge.endpoint``.

    """

    help = "Score next-query predictions and aggregate the judge totals"

    def add_command_arguments(self, parser: CommandParser) -> None:
        subparsers = parser.add_subparsers(dest="action", required=True)
        score = subparsers.add_parser("score", help="Score a sample file.")
        score.add_argument("--samples", required=True, help="Sample JSONL file.")
        score.add_argument(
            "--weights", default=None, help="w_sem,w_logic,w_style (default: config)."
        )
        score.add_argument("--out", required=True, help="Score report path (JSON).")

    def run(self, manager: SettingsManager, **options: Any) -> None:
        weights = (
            JudgeWeights.parse(options["weights"])
            if options["weights"]
            else get_judge_weights(manager)
        )
        judge: Optional[RemoteJudge] = None
        if manager.judge_endpoint:
            judge = RemoteJudge(
                build_remote_client(get_generator_config(manager), manager.judge_endpoint)
            )

        rows: List[Dict[str, Any]] = []
        scored: List[JudgeScores] = []
        for line_number, record in iter_jsonl(options["samples"]):
            try:
                scores = self.score_sample(record, judge)
            except DataError as e:
                if isinstance(e, MalformedRecord):
                    raise
                raise MalformedRecord(line_number, str(e), options["samples"]) from e
            scored.append(scores)
            rows.append(
                {"line": line_number, **scores.as_dict(), "total": aggregate(scores, weights)}
            )

        if not scored:
            raise DataError(f"{options['samples']} holds no sample")
        result = {
            "weights": {"sem": weights.w_sem, "logic": weights.w_logic, "style": weights.w_style},
            "samples": rows,
            "mean_total": mean_total(scored, weights),
        }
        with open(options["out"], "w", encoding="utf-8") as outfile:
            json.dump(round_floats(result), outfile, indent=2)
            outfile.write("\n")

        logger.info("Scored %d sample(s)", len(scored))
        self.stdout.write(
            self.style.SUCCESS(
                f"Scored {len(scored)} sample(s); mean total "
                f"{result['mean_total']:.4f} written to {options['out']}"
            )
        )

    @staticmethod
    def score_sample(record: Dict[str, Any], judge: Optional[RemoteJudge]) -> JudgeScores:
        query = record.get("query")
        if not isinstance(query, str) or not query.strip():
            raise DataError("'query' must be a non-empty string")
        response = record.get("response")
        if isinstance(response, str):
            return parse_scores(response)
        if judge is None:
            raise DataError("sample has no 'response' and judge.endpoint is not set")
        return judge.score(behavior_window(record.get("behavior")), query)
