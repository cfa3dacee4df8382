"""Session replay through the gate, prompt and generation stages."""

import hashlib
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from intent_pipeline.behavior.events import BehaviorEvent
from intent_pipeline.contextvar import manager
from intent_pipeline.decorators import execution_tracker
from intent_pipeline.drift.trigger import (
    DriftScore,
    DriftState,
    TriggerDecision,
    TriggerReason,
    should_trigger,
)
from intent_pipeline.exceptions import (
    ConfigurationError,
    GenerationFailed,
    TemplateOverBudget,
)
from intent_pipeline.generation.query import GeneratedQuery, generate
from intent_pipeline.harness.clock import Clock, SimulatedClock
from intent_pipeline.harness.pipeline import PipelineComponents
from intent_pipeline.harness.policy import PolicySpec
from intent_pipeline.prompting.engine import compose_prompt
from intent_pipeline.prompting.models import CostEstimate, Prompt
from intent_pipeline.prompting.tokenizer import count_tokens

logger = logging.getLogger(__name__)

TRIGGER_STAGE = "trigger"
PROMPT_STAGE = "prompt"
GENERATION_STAGE = "generation"
STAGES = (TRIGGER_STAGE, PROMPT_STAGE, GENERATION_STAGE)


@dataclass(frozen=True)
class TraceRecord:
    """One policy evaluation, made right after event ``index`` was appended.

    ``decision`` is only set under the drift policy. Fired records carry
    either ``prompt_failed`` (no prompt fits the budget) or the prompt hash
    with ``query`` or ``generation_failed``.

    """

    index: int
    timestamp: int
    fired: bool
    decision: Optional[TriggerDecision] = None
    prompt_hash: Optional[str] = None
    template_id: Optional[str] = None
    query: Optional[GeneratedQuery] = None
    generation_failed: bool = False
    prompt_failed: bool = False
    stage_latency_ms: Mapping[str, float] = field(default_factory=dict)

    @property
    def bootstrap(self) -> bool:
        return self.decision is not None and self.decision.reason is TriggerReason.BOOTSTRAP

    @property
    def score(self) -> Optional[DriftScore]:
        return self.decision.score if self.decision else None

    @property
    def total_latency_ms(self) -> float:
        return sum(self.stage_latency_ms.values())

    def to_record(self) -> Dict[str, Any]:
        score = self.score
        return {
            "index": self.index,
            "ts": self.timestamp,
            "fired": self.fired,
            "reason": self.decision.reason.value if self.decision else None,
            "fused": score.fused if score else None,
            "prompt_hash": self.prompt_hash,
            "template_id": self.template_id,
            "query": self.query.text if self.query else None,
            "generation_failed": self.generation_failed,
            "prompt_failed": self.prompt_failed,
            "stage_latency_ms": dict(sorted(self.stage_latency_ms.items())),
        }


@dataclass(frozen=True)
class ReplayTrace:
    user: str
    policy: str
    records: Tuple[TraceRecord, ...]

    @property
    def event_count(self) -> int:
        return len(self.records)

    @property
    def fired_records(self) -> List[TraceRecord]:
        return [record for record in self.records if record.fired]

    @property
    def trigger_count(self) -> int:
        return len(self.fired_records)


def _policy_fires(policy: PolicySpec, index: int) -> bool:
    if policy.kind == "always":
        return True
    return (index + 1) % (policy.k or 1) == 0


def _prompt_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@execution_tracker(logging_level=logging.DEBUG)
def replay(
    events: Sequence[BehaviorEvent],
    policy: PolicySpec,
    components: PipelineComponents,
    clock: Optional[Clock] = None,
    user: str = "",
) -> ReplayTrace:
    """Feed ``events`` one at a time and evaluate ``policy`` after each.

    On a trigger the prompt is built from the current window and the query
    generated. A ``TemplateOverBudget`` or ``GenerationFailed`` is recorded
    on the trace and the replay goes on.

    Returns:
        ReplayTrace: One record per event, in event order.

    """
    clock = clock or SimulatedClock()
    store = components.new_store()
    state = DriftState()
    records: List[TraceRecord] = []

    for index, event in enumerate(events):
        store.append_event(event)
        window = store.current_window(components.window_policy)
        timings: Dict[str, float] = {}
        decision: Optional[TriggerDecision] = None

        if policy.kind == "drift":
            if policy.drift is None:
                raise ConfigurationError("drift policy needs a DriftConfig")
            with clock.stage(timings, TRIGGER_STAGE) as timer:
                decision, state = should_trigger(
                    state, window, components.catalog, policy.drift
                )
                timer.charge(components.trigger_cost_ms)
            fired = decision.fired
        else:
            fired = _policy_fires(policy, index)

        if not fired:
            records.append(
                TraceRecord(index, event.timestamp, False, decision, stage_latency_ms=timings)
            )
            continue

        now = event.timestamp
        prompt: Optional[Prompt]
        with clock.stage(timings, PROMPT_STAGE) as timer:
            try:
                prompt = compose_prompt(
                    window,
                    components.catalog,
                    components.scenario,
                    components.pools,
                    components.scorer,
                    components.prompt_config,
                    components.budget,
                    now,
                    components.cost_config,
                    components.feature_config,
                )
            except TemplateOverBudget as e:
                logger.warning("No prompt fits the budget at event %d: %s", index, e)
                prompt = None
            else:
                timer.charge(
                    CostEstimate.for_tokens(
                        count_tokens(prompt.instantiated or ""), components.cost_config
                    ).latency_ms
                )

        if prompt is None:
            records.append(
                TraceRecord(
                    index=index,
                    timestamp=now,
                    fired=True,
                    decision=decision,
                    prompt_failed=True,
                    stage_latency_ms=timings,
                )
            )
            continue

        text = prompt.instantiated or ""
        query: Optional[GeneratedQuery] = None
        failed = False
        with clock.stage(timings, GENERATION_STAGE) as timer:
            try:
                query = generate(components.generator, text)
                timer.charge(query.latency_ms)
            except GenerationFailed as e:
                failed = True
                logger.warning("Generation failed at event %d: %s", index, e)

        records.append(
            TraceRecord(
                index=index,
                timestamp=now,
                fired=True,
                decision=decision,
                prompt_hash=_prompt_hash(text),
                template_id=prompt.template.id,
                query=query,
                generation_failed=failed,
                stage_latency_ms=timings,
            )
        )

    trace = ReplayTrace(user=user, policy=policy.label, records=tuple(records))
    logger.info(
        "Replayed %d event(s) with %d trigger(s)", trace.event_count, trace.trigger_count
    )
    return trace


def replay_sessions(
    sessions: Mapping[str, Sequence[BehaviorEvent]],
    policies: Sequence[PolicySpec],
    components: PipelineComponents,
    clock: Optional[Clock] = None,
    jobs: int = 1,
) -> List[ReplayTrace]:
    """Replay every session under every policy, up to ``jobs`` at a time.

    Traces come back grouped by policy (in the given order) and sorted by
    user within each policy, whatever the completion order.

    """
    if jobs < 1:
        raise ConfigurationError("--jobs must be >= 1")
    if not policies:
        raise ConfigurationError("at least one policy is required")
    clock = clock or SimulatedClock()

    def run(policy: PolicySpec, user: str) -> ReplayTrace:
        with manager.scoped_context(user=user, policy=policy.label):
            return replay(sessions[user], policy, components, clock, user)

    tasks = [(policy, user) for policy in policies for user in sorted(sessions)]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        futures = [executor.submit(run, policy, user) for policy, user in tasks]
        return [future.result() for future in futures]
