from dataclasses import dataclass, field
from typing import List, Optional, cast

from intent_pipeline.constants.config_types import (
    ClockKind,
    CorpusRatios,
    GeneratorKind,
    LogFormatType,
    LogLevel,
    WindowPolicyKind,
)


@dataclass(frozen=True)
class DefaultWindowSettings:
    policy: WindowPolicyKind = "count"
    size: int = 50
    span_ms: int = 600_000
    out_of_order_tolerance_ms: int = 5_000


@dataclass(frozen=True)
class DefaultFeatureSettings:
    recency_halflife_ms: int = 3_600_000
    freq_span_floor_ms: int = 1_000


# lambda and tau values come from the published online deployment
@dataclass(frozen=True)
class DefaultDriftSettings:
    lambda1: float = 0.4
    lambda2: float = 0.3
    lambda3: float = 0.3
    tau: float = 0.8
    min_window: int = 5
    cooldown_ms: int = 0


@dataclass(frozen=True)
class DefaultPromptSettings:
    beta: float = 1.0
    tau_struct: float = 0.0
    slot_allowance_tokens: int = 256
    templates_path: Optional[str] = None
    components_path: Optional[str] = None
    scenarios: List[str] = field(
        default_factory=lambda: [
            "payment_success",
            "shipment_tracking",
            "shopping_cart",
            "order_list",
        ]
    )
    scenario: str = "payment_success"


@dataclass(frozen=True)
class DefaultBudgetSettings:
    max_tokens: int = 512
    max_latency_ms: float = 1_500.0
    max_memory_kb: float = 8_192.0


@dataclass(frozen=True)
class DefaultCostSettings:
    latency_a: float = 2.0
    latency_b: float = 50.0
    memory_c: float = 4.0
    memory_d: float = 2_048.0


@dataclass(frozen=True)
class DefaultGeneratorSettings:
    kind: GeneratorKind = "mock"
    endpoint: Optional[str] = None
    timeout_ms: int = 2_000
    max_retries: int = 1
    max_in_flight: int = 4
    complement_table: Optional[str] = None
    mock_latency_per_token_ms: float = 5.0


@dataclass(frozen=True)
class DefaultJudgeSettings:
    w_sem: float = 1 / 3
    w_logic: float = 1 / 3
    w_style: float = 1 / 3
    endpoint: Optional[str] = None


@dataclass(frozen=True)
class DefaultCorpusSettings:
    behavior_log: Optional[str] = None
    catalog: Optional[str] = None
    co_purchase_matrix: Optional[str] = None
    human_samples: Optional[str] = None
    link_window_ms: int = 86_400_000
    top_k: int = 2
    total_size: int = 1_000
    seed: int = 0
    ratios: CorpusRatios = field(
        default_factory=lambda: cast(
            CorpusRatios,
            {
                "behavior_driven": 0.60,
                "co_purchase": 0.20,
                "llm_rewrite": 0.15,
                "human": 0.05,
            },
        )
    )


@dataclass(frozen=True)
class DefaultHarnessSettings:
    match_window: int = 10
    clock: ClockKind = "simulated"
    trigger_cost_ms: float = 0.5
    percentile_ranks: List[int] = field(default_factory=lambda: [50, 75, 90, 95])


@dataclass(frozen=True)
class DefaultLoggingSettings:
    level: LogLevel = "INFO"
    format_type: LogFormatType = "NORMAL"
    format: str = (
        "%(asctime)s | %(levelname)s | %(name)s | %(context)s | %(message)s"
    )
    date_format: str = "%Y-%m-%d %H:%M:%S"
    auto_initialization: bool = True
