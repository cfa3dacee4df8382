from typing import Any, Dict, Optional

from intent_pipeline.behavior.events import WindowPolicy
from intent_pipeline.behavior.tags import TagCatalog
from intent_pipeline.corpus.models import MixConfig
from intent_pipeline.corpus.pipeline import CorpusConfig
from intent_pipeline.drift.trigger import DriftConfig
from intent_pipeline.features.extraction import FeatureConfig
from intent_pipeline.generation.query import GeneratorConfig
from intent_pipeline.harness.pipeline import HarnessConfig, PipelineComponents, build_pipeline
from intent_pipeline.judge.scoring import JudgeWeights
from intent_pipeline.prompting.models import BudgetLimits, CostConfig, PromptEngineConfig
from intent_pipeline.prompting.pools import load_pools
from intent_pipeline.settings import SettingsManager, settings_manager


def _resolve(manager: Optional[SettingsManager]) -> SettingsManager:
    return manager or settings_manager


def get_config(manager: Optional[SettingsManager] = None) -> Dict[str, Any]:
    """Retrieve the logging configuration from the SettingsManager.

    Returns:
        Dict: A dictionary containing the keyword arguments of ``set_config``.

    """
    manager = _resolve(manager)
    config = {
        "log_level": manager.log_level,
        "format_type": manager.log_format_type,
        "log_format": manager.log_format,
        "log_date_format": manager.log_date_format,
    }

    return config


def is_auto_initialization_enabled(manager: Optional[SettingsManager] = None) -> bool:
    """Check if ``logging.auto_initialization`` is set to True.

    Returns:
        bool: True if logging should be configured on app start. Defaults to True.

    """
    return _resolve(manager).auto_initialization_enabled


def get_window_policy(manager: Optional[SettingsManager] = None) -> WindowPolicy:
    manager = _resolve(manager)
    return WindowPolicy(
        kind=manager.window_policy,
        size=manager.window_size,
        span_ms=manager.window_span_ms,
    )


def get_feature_config(manager: Optional[SettingsManager] = None) -> FeatureConfig:
    manager = _resolve(manager)
    return FeatureConfig(
        recency_halflife_ms=manager.recency_halflife_ms,
        freq_span_floor_ms=manager.freq_span_floor_ms,
    )


def get_drift_config(manager: Optional[SettingsManager] = None) -> DriftConfig:
    manager = _resolve(manager)
    lambda1, lambda2, lambda3 = manager.drift_lambdas
    return DriftConfig(
        lambda1=lambda1,
        lambda2=lambda2,
        lambda3=lambda3,
        tau_trigger=manager.drift_tau,
        min_window_size=manager.drift_min_window,
        cooldown_ms=manager.drift_cooldown_ms,
    )


def get_prompt_engine_config(
    manager: Optional[SettingsManager] = None,
) -> PromptEngineConfig:
    manager = _resolve(manager)
    return PromptEngineConfig(beta=manager.prompt_beta, tau_struct=manager.prompt_tau_struct)


def get_budget_limits(manager: Optional[SettingsManager] = None) -> BudgetLimits:
    manager = _resolve(manager)
    return BudgetLimits(
        max_tokens=manager.budget_max_tokens,
        max_latency_ms=manager.budget_max_latency_ms,
        max_memory_kb=manager.budget_max_memory_kb,
    )


def get_cost_config(manager: Optional[SettingsManager] = None) -> CostConfig:
    manager = _resolve(manager)
    return CostConfig(
        latency_a=manager.cost_latency_a,
        latency_b=manager.cost_latency_b,
        memory_c=manager.cost_memory_c,
        memory_d=manager.cost_memory_d,
        slot_allowance_tokens=manager.slot_allowance_tokens,
    )


def get_generator_config(manager: Optional[SettingsManager] = None) -> GeneratorConfig:
    manager = _resolve(manager)
    return GeneratorConfig(
        kind=manager.generator_kind,
        endpoint=manager.generator_endpoint,
        timeout_ms=manager.generator_timeout_ms,
        max_retries=manager.generator_max_retries,
        max_in_flight=manager.generator_max_in_flight,
        complement_table=manager.complement_table,
        mock_latency_per_token_ms=manager.mock_latency_per_token_ms,
    )


def get_judge_weights(manager: Optional[SettingsManager] = None) -> JudgeWeights:
    return JudgeWeights(*_resolve(manager).judge_weights)


def get_mix_config(manager: Optional[SettingsManager] = None) -> MixConfig:
    manager = _resolve(manager)
    return MixConfig(ratios=dict(manager.corpus_ratios), total_size=manager.corpus_total_size)


def get_corpus_config(manager: Optional[SettingsManager] = None) -> CorpusConfig:
    manager = _resolve(manager)
    return CorpusConfig(
        behavior_log=manager.corpus_behavior_log,
        catalog=manager.corpus_catalog,
        co_purchase_matrix=manager.corpus_co_purchase_matrix,
        human_samples=manager.corpus_human_samples,
        link_window_ms=manager.corpus_link_window_ms,
        top_k=manager.corpus_top_k,
        window_size=manager.corpus_window_size,
        seed=manager.corpus_seed,
        mix=get_mix_config(manager),
    )


def get_harness_config(manager: Optional[SettingsManager] = None) -> HarnessConfig:
    manager = _resolve(manager)
    return HarnessConfig(
        match_window=manager.match_window,
        clock=manager.clock,
        trigger_cost_ms=manager.trigger_cost_ms,
        percentile_ranks=tuple(manager.percentile_ranks),
    )


def get_pipeline(
    catalog: TagCatalog, manager: Optional[SettingsManager] = None
) -> PipelineComponents:
    """Assemble the replay pipeline for ``catalog`` from the settings."""
    manager = _resolve(manager)
    return build_pipeline(
        catalog,
        generator_config=get_generator_config(manager),
        pools=load_pools(manager.templates_path, manager.components_path),
        scenarios=tuple(manager.scenarios),
        scenario=manager.scenario,
        budget=get_budget_limits(manager),
        prompt_config=get_prompt_engine_config(manager),
        cost_config=get_cost_config(manager),
        feature_config=get_feature_config(manager),
        window_policy=get_window_policy(manager),
        out_of_order_tolerance_ms=manager.out_of_order_tolerance_ms,
        trigger_cost_ms=manager.trigger_cost_ms,
    )
