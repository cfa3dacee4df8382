from typing import Any, Dict, List, Optional

from django.core.checks import Error, register

from intent_pipeline.constants import (
    ALLOWED_CLOCKS,
    ALLOWED_GENERATOR_KINDS,
    ALLOWED_LOG_FORMAT_TYPES,
    ALLOWED_LOG_LEVELS,
    ALLOWED_WINDOW_POLICIES,
)
from intent_pipeline.settings.manager import SettingsManager, settings_manager
from intent_pipeline.validators.config_validators import (
    validate_boolean_setting,
    validate_choice,
    validate_date_format,
    validate_endpoint,
    validate_finite_number,
    validate_format_string,
    validate_integer_setting,
    validate_optional_file,
    validate_percentile_ranks,
    validate_positive_number,
    validate_string_list,
    validate_unit_interval,
    validate_weights,
)


# pylint: disable=too-many-statements
def run_config_checks(manager: SettingsManager) -> List[Error]:
    """Validate every pipeline setting held by ``manager``.

    Returns:
        List[Error]: One ``Error`` per problem; empty when the merged
        settings are usable.

    """
    errors: List[Error] = []

    # Behavior window
    errors.extend(
        validate_choice(manager.window_policy, "window.policy", ALLOWED_WINDOW_POLICIES)
    )
    errors.extend(validate_integer_setting(manager.window_size, "window.size", 1))
    errors.extend(validate_integer_setting(manager.window_span_ms, "window.span_ms", 1))
    errors.extend(
        validate_integer_setting(
            manager.out_of_order_tolerance_ms, "window.out_of_order_tolerance_ms"
        )
    )

    # Features
    errors.extend(
        validate_integer_setting(
            manager.recency_halflife_ms, "feature.recency_halflife_ms", 1
        )
    )
    errors.extend(
        validate_integer_setting(manager.freq_span_floor_ms, "feature.freq_span_floor_ms", 1)
    )

    # Drift trigger
    errors.extend(validate_weights(manager.drift_lambdas, "drift.lambda"))
    errors.extend(validate_unit_interval(manager.drift_tau, "drift.tau"))
    errors.extend(validate_integer_setting(manager.drift_min_window, "drift.min_window", 1))
    errors.extend(validate_integer_setting(manager.drift_cooldown_ms, "drift.cooldown_ms"))

    # Prompt engine, budget and cost
    errors.extend(validate_positive_number(manager.prompt_beta, "prompt.beta"))
    errors.extend(validate_finite_number(manager.prompt_tau_struct, "prompt.tau_struct"))
    errors.extend(
        validate_integer_setting(
            manager.slot_allowance_tokens, "prompt.slot_allowance_tokens"
        )
    )
    errors.extend(validate_optional_file(manager.templates_path, "prompt.templates_path"))
    errors.extend(
        validate_optional_file(manager.components_path, "prompt.components_path")
    )
    errors.extend(validate_string_list(manager.scenarios, "prompt.scenarios"))
    errors.extend(validate_string_list([manager.scenario], "prompt.scenario"))
    errors.extend(validate_integer_setting(manager.budget_max_tokens, "budget.max_tokens", 1))
    errors.extend(
        validate_positive_number(manager.budget_max_latency_ms, "budget.max_latency_ms")
    )
    errors.extend(
        validate_positive_number(manager.budget_max_memory_kb, "budget.max_memory_kb")
    )
    for key, value in (
        ("cost.latency_a", manager.cost_latency_a),
        ("cost.latency_b", manager.cost_latency_b),
        ("cost.memory_c", manager.cost_memory_c),
        ("cost.memory_d", manager.cost_memory_d),
    ):
        errors.extend(validate_positive_number(value, key, allow_zero=True))

    # Generation
    errors.extend(
        validate_choice(manager.generator_kind, "generator.kind", ALLOWED_GENERATOR_KINDS)
    )
    errors.extend(
        validate_endpoint(
            manager.generator_endpoint,
            "generator.endpoint",
            required=manager.generator_kind == "remote",
        )
    )
    errors.extend(
        validate_integer_setting(manager.generator_timeout_ms, "generator.timeout_ms", 1)
    )
    errors.extend(
        validate_integer_setting(manager.generator_max_retries, "generator.max_retries")
    )
    errors.extend(
        validate_integer_setting(
            manager.generator_max_in_flight, "generator.max_in_flight", 1
        )
    )
    errors.extend(
        validate_optional_file(manager.complement_table, "generator.complement_table")
    )
    errors.extend(
        validate_positive_number(
            manager.mock_latency_per_token_ms,
            "generator.mock_latency_per_token_ms",
            allow_zero=True,
        )
    )

    # Judge
    errors.extend(validate_weights(manager.judge_weights, "judge.weights"))
    errors.extend(validate_endpoint(manager.judge_endpoint, "judge.endpoint", False))

    # Corpus
    for key, path in (
        ("corpus.behavior_log", manager.corpus_behavior_log),
        ("corpus.catalog", manager.corpus_catalog),
        ("corpus.co_purchase_matrix", manager.corpus_co_purchase_matrix),
        ("corpus.human_samples", manager.corpus_human_samples),
    ):
        errors.extend(validate_optional_file(path, key))
    errors.extend(
        validate_integer_setting(manager.corpus_link_window_ms, "corpus.link_window_ms", 1)
    )
    errors.extend(validate_integer_setting(manager.corpus_top_k, "corpus.top_k", 1))
    errors.extend(validate_integer_setting(manager.corpus_total_size, "corpus.total_size"))
    errors.extend(validate_integer_setting(manager.corpus_seed, "corpus.seed"))
    errors.extend(
        validate_integer_setting(manager.corpus_window_size, "corpus.window_size", 1)
    )
    errors.extend(validate_weights(manager.corpus_ratios.values(), "corpus.ratio"))

    # Harness
    errors.extend(validate_integer_setting(manager.match_window, "harness.match_window"))
    errors.extend(validate_choice(manager.clock, "harness.clock", ALLOWED_CLOCKS))
    errors.extend(
        validate_positive_number(
            manager.trigger_cost_ms, "harness.trigger_cost_ms", allow_zero=True
        )
    )
    errors.extend(
        validate_percentile_ranks(manager.percentile_ranks, "harness.percentile_ranks")
    )

    # Logging
    errors.extend(validate_choice(manager.log_level, "logging.level", ALLOWED_LOG_LEVELS))
    errors.extend(
        validate_choice(
            manager.log_format_type, "logging.format_type", ALLOWED_LOG_FORMAT_TYPES
        )
    )
    errors.extend(validate_format_string(manager.log_format, "logging.format"))
    errors.extend(validate_date_format(manager.log_date_format, "logging.date_format"))
    errors.extend(
        validate_boolean_setting(
            manager.auto_initialization_enabled, "logging.auto_initialization"
        )
    )
    return errors


@register()
def check_pipeline_settings(
    app_configs: Optional[Dict[str, Any]], **kwargs: Any
) -> List[Error]:
    """Django system check over the ``INTENT_PIPELINE`` setting."""
    return run_config_checks(settings_manager)
