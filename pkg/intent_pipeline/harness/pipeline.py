import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from intent_pipeline.behavior.events import WindowPolicy
from intent_pipeline.behavior.store import (
    DEFAULT_OUT_OF_ORDER_TOLERANCE_MS,
    EventStore,
)
from intent_pipeline.behavior.tags import TagCatalog
from intent_pipeline.constants.config_types import ClockKind
from intent_pipeline.exceptions import ConfigurationError
from intent_pipeline.features.extraction import FeatureConfig
from intent_pipeline.generation.factory import build_generator
from intent_pipeline.generation.query import GeneratorConfig, QueryGenerator
from intent_pipeline.prompting.models import (
    BudgetLimits,
    CostConfig,
    PromptEngineConfig,
    ScenarioContext,
)
from intent_pipeline.prompting.pools import PromptPools, default_pools
from intent_pipeline.prompting.scorer import FeatureBasis, LinearAffinityScorer, ScorerModel

logger = logging.getLogger(__name__)

DEFAULT_SCENARIOS = (
    "payment_success",
    "shipment_tracking",
    "shopping_cart",
    "order_list",
)


@dataclass(frozen=True)
class PipelineComponents:
    """Everything a replay needs besides the policy and the clock.

    Shared read-only between concurrently replayed sessions; each session
    gets its own ``EventStore`` from ``new_store``.

    """

    catalog: TagCatalog
    pools: PromptPools
    scorer: ScorerModel
    generator: QueryGenerator
    scenario: ScenarioContext
    budget: BudgetLimits
    prompt_config: PromptEngineConfig = PromptEngineConfig()
    cost_config: CostConfig = CostConfig()
    feature_config: FeatureConfig = FeatureConfig()
    window_policy: WindowPolicy = field(default_factory=WindowPolicy)
    out_of_order_tolerance_ms: int = DEFAULT_OUT_OF_ORDER_TOLERANCE_MS
    trigger_cost_ms: float = 0.5

    def __post_init__(self) -> None:
        if not self.pools.templates_for(self.scenario):
            raise ConfigurationError(
                f"no template serves scenario '{self.scenario.scenario_id}'"
            )
        if self.trigger_cost_ms < 0:
            raise ConfigurationError("harness.trigger_cost_ms must be >= 0")

    def new_store(self) -> EventStore:
        return EventStore(self.window_policy, self.out_of_order_tolerance_ms)


def build_pipeline(
    catalog: TagCatalog,
    generator_config: GeneratorConfig = GeneratorConfig(),
    pools: Optional[PromptPools] = None,
    scenarios: Sequence[str] = DEFAULT_SCENARIOS,
    scenario: str = DEFAULT_SCENARIOS[0],
    budget: BudgetLimits = BudgetLimits(512, 1_500.0, 8_192.0),
    prompt_config: PromptEngineConfig = PromptEngineConfig(),
    cost_config: CostConfig = CostConfig(),
    feature_config: FeatureConfig = FeatureConfig(),
    window_policy: WindowPolicy = WindowPolicy(),
    out_of_order_tolerance_ms: int = DEFAULT_OUT_OF_ORDER_TOLERANCE_MS,
    trigger_cost_ms: float = 0.5,
) -> PipelineComponents:
    """Assemble the components, checking pool affinities against the basis."""
    if scenario not in scenarios:
        raise ConfigurationError(
            f"prompt.scenario '{scenario}' is not one of {list(scenarios)}"
        )
    pools = pools or default_pools()
    basis = FeatureBasis(scenarios)
    pools.check_dimensions(basis)
    logger.debug(
        "Pipeline ready: %d template(s), %d component(s), scenario '%s'",
        len(pools.templates),
        len(pools.components),
        scenario,
    )
    return PipelineComponents(
        catalog=catalog,
        pools=pools,
        scorer=LinearAffinityScorer(basis),
        generator=build_generator(generator_config, catalog),
        scenario=ScenarioContext(scenario),
        budget=budget,
        prompt_config=prompt_config,
        cost_config=cost_config,
        feature_config=feature_config,
        window_policy=window_policy,
        out_of_order_tolerance_ms=out_of_order_tolerance_ms,
        trigger_cost_ms=trigger_cost_ms,
    )


@dataclass(frozen=True)
class HarnessConfig:
    """Replay and report knobs: shift matching, clock and percentile ranks."""

    match_window: int = 10
    clock: ClockKind = "simulated"
    trigger_cost_ms: float = 0.5
    percentile_ranks: Tuple[float, ...] = (50, 75, 90, 95)

    def __post_init__(self) -> None:
        if self.match_window < 0:
            raise ConfigurationError("harness.match_window must be >= 0")
        if self.clock not in ("simulated", "wall"):
            raise ConfigurationError(f"unknown clock {self.clock!r}")
        if self.trigger_cost_ms < 0:
            raise ConfigurationError("harness.trigger_cost_ms must be >= 0")
        if not self.percentile_ranks or not all(
            0 < rank <= 100 for rank in self.percentile_ranks
        ):
            raise ConfigurationError("harness.percentile_ranks must lie in (0, 100]")
