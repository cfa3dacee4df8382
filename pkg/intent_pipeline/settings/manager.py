from typing import Any, Dict, List, Mapping, Optional

from django.conf import settings

from intent_pipeline.constants import (
    DefaultBudgetSettings,
    DefaultCorpusSettings,
    DefaultCostSettings,
    DefaultDriftSettings,
    DefaultFeatureSettings,
    DefaultGeneratorSettings,
    DefaultHarnessSettings,
    DefaultJudgeSettings,
    DefaultLoggingSettings,
    DefaultPromptSettings,
    DefaultWindowSettings,
)
from intent_pipeline.constants.config_types import (
    ClockKind,
    CorpusRatios,
    GeneratorKind,
    LogFormatType,
    LogLevel,
    WindowPolicyKind,
)
from intent_pipeline.utils.files import flatten_settings


# pylint: disable=too-many-instance-attributes, too-many-statements
class SettingsManager:
    """Manages INTENT_PIPELINE settings. All configurations are initialized at
    once and accessible via attributes.

    Values are looked up by flat dotted keys (``drift.tau``). The Django
    ``INTENT_PIPELINE`` setting is read first and ``overrides`` (usually a
    loaded config file) are layered on top of it.

    Attributes:
        pipeline_settings (Dict[str, Any]): The merged flat settings.
        window_policy (str): ``count`` or ``time`` window policy.
        drift_lambdas (List[float]): The three drift fusion weights.
        drift_tau (float): The strict drift trigger threshold.
        prompt_beta (float): Softmax temperature for template selection.
        budget_max_tokens (int): Token axis of the on-device budget.
        generator_kind (str): ``mock`` or ``remote`` generator.
        corpus_ratios (Dict[str, float]): Mixing ratio per sample source.
        log_format_type (str): Console formatter type (NORMAL, JSON, FLAT).

    """

    def __init__(self, overrides: Optional[Mapping[str, Any]] = None) -> None:
        """Initializes all settings from the Django settings and the optional
        overrides, falling back to the defaults in ``constants``."""
        django_settings = getattr(settings, "INTENT_PIPELINE", {})
        if not isinstance(django_settings, dict):
            raise ValueError(
                "INTENT_PIPELINE must be a dictionary with configs as keys"
            )

        self.pipeline_settings: Dict[str, Any] = flatten_settings(django_settings)
        if overrides:
            self.pipeline_settings.update(flatten_settings(overrides))

        window = DefaultWindowSettings()
        feature = DefaultFeatureSettings()
        drift = DefaultDriftSettings()
        prompt = DefaultPromptSettings()
        budget = DefaultBudgetSettings()
        cost = DefaultCostSettings()
        generator = DefaultGeneratorSettings()
        judge = DefaultJudgeSettings()
        corpus = DefaultCorpusSettings()
        harness = DefaultHarnessSettings()
        log = DefaultLoggingSettings()

        # Behavior window
        self.window_policy: WindowPolicyKind = self.get("window.policy", window.policy)
        self.window_size: int = self.get("window.size", window.size)
        self.window_span_ms: int = self.get("window.span_ms", window.span_ms)
        self.out_of_order_tolerance_ms: int = self.get(
            "window.out_of_order_tolerance_ms", window.out_of_order_tolerance_ms
        )

        # Feature extraction
        self.recency_halflife_ms: int = self.get(
            "feature.recency_halflife_ms", feature.recency_halflife_ms
        )
        self.freq_span_floor_ms: int = self.get(
            "feature.freq_span_floor_ms", feature.freq_span_floor_ms
        )

        # Drift trigger
        self.drift_lambdas: List[float] = [
            self.get("drift.lambda1", drift.lambda1),
            self.get("drift.lambda2", drift.lambda2),
            self.get("drift.lambda3", drift.lambda3),
        ]
        self.drift_tau: float = self.get("drift.tau", drift.tau)
        self.drift_min_window: int = self.get("drift.min_window", drift.min_window)
        self.drift_cooldown_ms: int = self.get("drift.cooldown_ms", drift.cooldown_ms)

        # Prompt engine
        self.prompt_beta: float = self.get("prompt.beta", prompt.beta)
        self.prompt_tau_struct: float = self.get("prompt.tau_struct", prompt.tau_struct)
        self.slot_allowance_tokens: int = self.get(
            "prompt.slot_allowance_tokens", prompt.slot_allowance_tokens
        )
        self.templates_path: Optional[str] = self.get(
            "prompt.templates_path", prompt.templates_path
        )
        self.components_path: Optional[str] = self.get(
            "prompt.components_path", prompt.components_path
        )
        self.scenarios: List[str] = self.get("prompt.scenarios", prompt.scenarios)
        self.scenario: str = self.get("prompt.scenario", prompt.scenario)

        # Budget and cost model
        self.budget_max_tokens: int = self.get("budget.max_tokens", budget.max_tokens)
        self.budget_max_latency_ms: float = self.get(
            "budget.max_latency_ms", budget.max_latency_ms
        )
        self.budget_max_memory_kb: float = self.get(
            "budget.max_memory_kb", budget.max_memory_kb
        )
        self.cost_latency_a: float = self.get("cost.latency_a", cost.latency_a)
        self.cost_latency_b: float = self.get("cost.latency_b", cost.latency_b)
        self.cost_memory_c: float = self.get("cost.memory_c", cost.memory_c)
        self.cost_memory_d: float = self.get("cost.memory_d", cost.memory_d)

        # Generation
        self.generator_kind: GeneratorKind = self.get("generator.kind", generator.kind)
        self.generator_endpoint: Optional[str] = self.get(
            "generator.endpoint", generator.endpoint
        )
        self.generator_timeout_ms: int = self.get(
            "generator.timeout_ms", generator.timeout_ms
        )
        self.generator_max_retries: int = self.get(
            "generator.max_retries", generator.max_retries
        )
        self.generator_max_in_flight: int = self.get(
            "generator.max_in_flight", generator.max_in_flight
        )
        self.complement_table: Optional[str] = self.get(
            "generator.complement_table", generator.complement_table
        )
        self.mock_latency_per_token_ms: float = self.get(
            "generator.mock_latency_per_token_ms", generator.mock_latency_per_token_ms
        )

        # Judge
        self.judge_weights: List[float] = [
            self.get("judge.w_sem", judge.w_sem),
            self.get("judge.w_logic", judge.w_logic),
            self.get("judge.w_style", judge.w_style),
        ]
        self.judge_endpoint: Optional[str] = self.get("judge.endpoint", judge.endpoint)

        # Corpus builder
        self.corpus_behavior_log: Optional[str] = self.get(
            "corpus.behavior_log", corpus.behavior_log
        )
        self.corpus_catalog: Optional[str] = self.get("corpus.catalog", corpus.catalog)
        self.corpus_co_purchase_matrix: Optional[str] = self.get(
            "corpus.co_purchase_matrix", corpus.co_purchase_matrix
        )
        self.corpus_human_samples: Optional[str] = self.get(
            "corpus.human_samples", corpus.human_samples
        )
        self.corpus_link_window_ms: int = self.get(
            "corpus.link_window_ms", corpus.link_window_ms
        )
        self.corpus_top_k: int = self.get("corpus.top_k", corpus.top_k)
        self.corpus_total_size: int = self.get("corpus.total_size", corpus.total_size)
        self.corpus_seed: int = self.get("corpus.seed", corpus.seed)
        self.corpus_window_size: int = self.get("corpus.window_size", self.window_size)
        self.corpus_ratios: CorpusRatios = {  # type: ignore[assignment]
            source: self.get(f"corpus.ratio.{source}", default)
            for source, default in corpus.ratios.items()
        }

        # Harness
        self.match_window: int = self.get("harness.match_window", harness.match_window)
        self.clock: ClockKind = self.get("harness.clock", harness.clock)
        self.trigger_cost_ms: float = self.get(
            "harness.trigger_cost_ms", harness.trigger_cost_ms
        )
        self.percentile_ranks: List[int] = self.get(
            "harness.percentile_ranks", harness.percentile_ranks
        )

        # Logging
        self.log_level: LogLevel = self.get("logging.level", log.level)
        self.log_format_type: LogFormatType = self.get(
            "logging.format_type", log.format_type
        )
        self.log_format: str = self.get("logging.format", log.format)
        self.log_date_format: str = self.get("logging.date_format", log.date_format)
        self.auto_initialization_enabled: bool = self.get(
            "logging.auto_initialization", log.auto_initialization
        )

    def get(self, key: str, default_value: Any) -> Any:
        """Retrieves a pipeline setting by its dotted key. If the setting is
        not present, returns the provided default value.

        Args:
            key (str): The dotted key to look up, e.g. ``drift.tau``.
            default_value (Any): The default value to return if the key is not found.

        Returns:
            Any: The value of the setting or the default value.

        """
        return self.pipeline_settings.get(key, default_value)


settings_manager: SettingsManager = SettingsManager()
