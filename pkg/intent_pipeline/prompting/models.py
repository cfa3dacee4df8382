from dataclasses import dataclass, field
from types import MappingProxyType
from typing import FrozenSet, Mapping, Optional, Sequence, Tuple

from intent_pipeline.constants.prompts import BEHAVIOR_SLOT, TIMESTAMP_SLOT
from intent_pipeline.exceptions import ConfigurationError, DataError, DuplicateComponent
from intent_pipeline.prompting.tokenizer import count_tokens


@dataclass(frozen=True)
class ScenarioContext:
    scenario_id: str
    attributes: Mapping[str, str] = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self) -> None:
        if not self.scenario_id:
            raise DataError("scenario_id must be non-empty")


@dataclass(frozen=True)
class PromptTemplate:
    """A prompt body with ``{timestamp}`` and ``{behavior_sequence}`` slots.

    An empty ``scenario_ids`` makes the template universal.

    """

    id: str
    body: str
    affinity: Tuple[float, ...]
    scenario_ids: FrozenSet[str] = frozenset()

    def __post_init__(self) -> None:
        if not self.id:
            raise ConfigurationError("template id must be non-empty")
        for slot in (TIMESTAMP_SLOT, BEHAVIOR_SLOT):
            if self.body.count(slot) != 1:
                raise ConfigurationError(
                    f"template '{self.id}' must contain {slot} exactly once"
                )

    def applies_to(self, scenario: ScenarioContext) -> bool:
        return not self.scenario_ids or scenario.scenario_id in self.scenario_ids


@dataclass(frozen=True)
class PromptComponent:
    id: str
    text: str
    affinity: Tuple[float, ...]
    token_cost: int

    def __post_init__(self) -> None:
        if not self.id:
            raise ConfigurationError("component id must be non-empty")
        actual = count_tokens(self.text)
        if self.token_cost != actual:
            raise ConfigurationError(
                f"component '{self.id}' declares {self.token_cost} tokens, "
                f"its text has {actual}"
            )

    @classmethod
    def create(
        cls, id: str, text: str, affinity: Sequence[float]
    ) -> "PromptComponent":
        return cls(
            id=id,
            text=text,
            affinity=tuple(float(a) for a in affinity),
            token_cost=count_tokens(text),
        )


@dataclass(frozen=True)
class BudgetLimits:
    """On-device budget; every axis is an inclusive upper bound."""

    max_tokens: int
    max_latency_ms: float
    max_memory_kb: float

    def __post_init__(self) -> None:
        if self.max_tokens <= 0 or self.max_latency_ms <= 0 or self.max_memory_kb <= 0:
            raise ConfigurationError("every budget axis must be strictly positive")


@dataclass(frozen=True)
class CostConfig:
    """Affine latency/memory model over tokens plus the behavior slot allowance."""

    latency_a: float = 2.0
    latency_b: float = 50.0
    memory_c: float = 4.0
    memory_d: float = 2_048.0
    slot_allowance_tokens: int = 256

    def __post_init__(self) -> None:
        if self.latency_a < 0 or self.memory_c < 0:
            raise ConfigurationError("cost slopes must be non-negative")
        if self.slot_allowance_tokens < 0:
            raise ConfigurationError("prompt.slot_allowance_tokens must be >= 0")


@dataclass(frozen=True)
class CostEstimate:
    tokens: int
    latency_ms: float
    memory_kb: float

    @classmethod
    def for_tokens(cls, tokens: int, cost_config: CostConfig) -> "CostEstimate":
        return cls(
            tokens=tokens,
            latency_ms=cost_config.latency_a * tokens + cost_config.latency_b,
            memory_kb=cost_config.memory_c * tokens + cost_config.memory_d,
        )

    def within(self, budget: BudgetLimits) -> bool:
        return (
            self.tokens <= budget.max_tokens
            and self.latency_ms <= budget.max_latency_ms
            and self.memory_kb <= budget.max_memory_kb
        )


@dataclass(frozen=True)
class PromptEngineConfig:
    beta: float = 1.0
    tau_struct: float = 0.0

    def __post_init__(self) -> None:
        if self.beta <= 0:
            raise ConfigurationError("prompt.beta must be > 0")


@dataclass(frozen=True)
class Prompt:
    """A selected template plus the components accepted so far."""

    template: PromptTemplate
    accepted_components: Tuple[PromptComponent, ...] = ()
    instantiated: Optional[str] = None

    def __post_init__(self) -> None:
        ids = [component.id for component in self.accepted_components]
        if len(ids) != len(set(ids)):
            raise DuplicateComponent("accepted components must be distinct")

    def has_component(self, component: PromptComponent) -> bool:
        return any(c.id == component.id for c in self.accepted_components)

    def with_component(self, component: PromptComponent) -> "Prompt":
        """The composition ``P + c``: append ``component`` to the prompt."""
        if self.has_component(component):
            raise DuplicateComponent(f"component '{component.id}' already accepted")
        return Prompt(self.template, (*self.accepted_components, component))

    def without_component(self, component: PromptComponent) -> "Prompt":
        return Prompt(
            self.template,
            tuple(c for c in self.accepted_components if c.id != component.id),
        )
