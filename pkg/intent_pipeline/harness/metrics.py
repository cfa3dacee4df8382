import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from intent_pipeline.exceptions import DataError
from intent_pipeline.harness.replay import STAGES, ReplayTrace

logger = logging.getLogger(__name__)

DEFAULT_PERCENTILE_RANKS = (50, 75, 90, 95)
DEFAULT_MATCH_WINDOW = 10


def _nearest_rank(rank: float, size: int) -> int:
    position = math.ceil(Fraction(str(rank)) * size / 100)
    return min(size, max(1, position))


def compute_percentiles(
    latencies: Sequence[float], ranks: Sequence[float] = DEFAULT_PERCENTILE_RANKS
) -> Dict[float, float]:
    """Nearest-rank percentiles: the sorted value at 1-based ``ceil(p/100 * n)``.

    Raises:
        DataError: If ``latencies`` is empty or a rank is outside (0, 100].

    """
    if len(latencies) == 0:
        raise DataError("cannot compute percentiles of an empty latency list")
    for rank in ranks:
        if not 0 < rank <= 100:
            raise DataError(f"percentile rank {rank} is outside (0, 100]")
    ordered = np.sort(np.asarray(latencies, dtype=np.float64))
    return {rank: float(ordered[_nearest_rank(rank, len(ordered)) - 1]) for rank in ranks}


def match_shifts(
    trigger_indices: Sequence[int], shifts: Sequence[int], match_window: int
) -> int:
    """Greedy earliest matching of triggers to shifts.

    A trigger at ``i`` matches the earliest unmatched shift ``s`` with
    ``0 <= i - s <= match_window``.

    Returns:
        int: The number of matched triggers.

    """
    unmatched = sorted(shifts)
    matched = 0
    for index in sorted(trigger_indices):
        for position, shift in enumerate(unmatched):
            if 0 <= index - shift <= match_window:
                del unmatched[position]
                matched += 1
                break
    return matched


def _ratio(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator else 1.0


def _detection_triggers(trace: ReplayTrace) -> List[int]:
    return [record.index for record in trace.fired_records if not record.bootstrap]


def detect_shift_metrics(
    trace: ReplayTrace,
    ground_truth: Sequence[int],
    match_window: int = DEFAULT_MATCH_WINDOW,
) -> Tuple[float, float]:
    """Precision and recall of the non-bootstrap triggers against the shifts.

    An empty denominator yields 1.0.

    """
    triggers = _detection_triggers(trace)
    matched = match_shifts(triggers, ground_truth, match_window)
    return _ratio(matched, len(triggers)), _ratio(matched, len(ground_truth))


@dataclass(frozen=True)
class MetricsReport:
    """Metrics of one policy aggregated over every replayed session.

    Precision and recall are pooled over users (matched, triggers and
    shifts are summed first) and left unset without ground truth.

    """

    policy: str
    users: int
    event_count: int
    trigger_count: int
    trigger_rate: float
    bootstrap_count: int
    generation_failures: int
    prompt_failures: int
    precision: Optional[float]
    recall: Optional[float]
    latency_percentiles_ms: Dict[str, Optional[float]] = field(default_factory=dict)
    stage_mean_latency_ms: Dict[str, Optional[float]] = field(default_factory=dict)

    def as_dict(self) -> Dict[str, object]:
        return {
            "policy": self.policy,
            "users": self.users,
            "event_count": self.event_count,
            "trigger_count": self.trigger_count,
            "trigger_rate": self.trigger_rate,
            "bootstrap_count": self.bootstrap_count,
            "generation_failures": self.generation_failures,
            "prompt_failures": self.prompt_failures,
            "precision": self.precision,
            "recall": self.recall,
            "latency_percentiles_ms": dict(self.latency_percentiles_ms),
            "stage_mean_latency_ms": dict(self.stage_mean_latency_ms),
        }


def percentile_label(rank: float) -> str:
    return f"p{rank:g}"


def summarize_policy(
    policy: str,
    traces: Sequence[ReplayTrace],
    ground_truth: Optional[Mapping[str, Sequence[int]]] = None,
    match_window: int = DEFAULT_MATCH_WINDOW,
    ranks: Sequence[float] = DEFAULT_PERCENTILE_RANKS,
) -> MetricsReport:
    events = sum(trace.event_count for trace in traces)
    fired = [record for trace in traces for record in trace.fired_records]

    precision = recall = None
    if ground_truth is not None:
        matched = triggers = shifts = 0
        for trace in traces:
            user_shifts = ground_truth.get(trace.user, [])
            detections = _detection_triggers(trace)
            matched += match_shifts(detections, user_shifts, match_window)
            triggers += len(detections)
            shifts += len(user_shifts)
        precision, recall = _ratio(matched, triggers), _ratio(matched, shifts)

    latencies = [record.total_latency_ms for record in fired]
    percentiles: Dict[str, Optional[float]] = {
        percentile_label(rank): None for rank in ranks
    }
    if latencies:
        for rank, value in compute_percentiles(latencies, ranks).items():
            percentiles[percentile_label(rank)] = value

    stage_means: Dict[str, Optional[float]] = {}
    for stage in STAGES:
        samples = [
            record.stage_latency_ms[stage]
            for trace in traces
            for record in trace.records
            if stage in record.stage_latency_ms
        ]
        stage_means[stage] = float(np.mean(samples)) if samples else None

    return MetricsReport(
        policy=policy,
        users=len({trace.user for trace in traces}),
        event_count=events,
        trigger_count=len(fired),
        trigger_rate=len(fired) / events if events else 0.0,
        bootstrap_count=sum(1 for record in fired if record.bootstrap),
        generation_failures=sum(1 for record in fired if record.generation_failed),
        prompt_failures=sum(1 for record in fired if record.prompt_failed),
        precision=precision,
        recall=recall,
        latency_percentiles_ms=percentiles,
        stage_mean_latency_ms=stage_means,
    )


def build_report(
    traces: Sequence[ReplayTrace],
    ground_truth: Optional[Mapping[str, Sequence[int]]] = None,
    match_window: int = DEFAULT_MATCH_WINDOW,
    ranks: Sequence[float] = DEFAULT_PERCENTILE_RANKS,
    seed: Optional[int] = None,
    clock: str = "simulated",
) -> Dict[str, object]:
    """One ``MetricsReport`` per policy, in first-seen policy order.

    Raises:
        DataError: If ``traces`` is empty.

    """
    if not traces:
        raise DataError("cannot report on an empty set of traces")

    by_policy: Dict[str, List[ReplayTrace]] = {}
    for trace in traces:
        by_policy.setdefault(trace.policy, []).append(trace)

    reports = [
        summarize_policy(
            policy,
            sorted(policy_traces, key=lambda trace: trace.user),
            ground_truth,
            match_window,
            ranks,
        )
        for policy, policy_traces in by_policy.items()
    ]
    for report in reports:
        logger.info(
            "Policy %s: %d trigger(s) over %d event(s), precision=%s recall=%s",
            report.policy,
            report.trigger_count,
            report.event_count,
            report.precision,
            report.recall,
        )
    return {
        "seed": seed,
        "clock": clock,
        "match_window": match_window,
        "percentile_ranks": list(ranks),
        "policies": [report.as_dict() for report in reports],
    }
