from intent_pipeline.tests.setup import configure_django_settings
from intent_pipeline.tests.fixtures import (
    affinity_scorer,
    behavior_features,
    debug_log_record,
    disjoint_stream,
    disjoint_stream_spec,
    engine_template,
    error_log_record,
    error_with_exc_log_record,
    feature_basis,
    flat_formatter,
    js_only_drift,
    json_formatter,
    log_config,
    log_manager,
    make_component,
    make_events,
    make_json_response,
    make_sample,
    make_window,
    mock_http_session,
    mock_settings,
    pipeline_components,
    remote_client,
    restore_pipeline_logger,
    s1_scenario,
    tag_catalog,
    token_budget,
    unit_cost_config,
    write_jsonl_file,
    write_text_file,
)
