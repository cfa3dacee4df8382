from .catalog_fixture import make_events, make_window, tag_catalog
from .conf_fixture import log_config, log_manager
from .corpus_fixture import make_sample
from .files_fixture import write_jsonl_file, write_text_file
from .formatters import flat_formatter, json_formatter
from .log_record_fixture import (
    debug_log_record,
    error_log_record,
    error_with_exc_log_record,
)
from .pipeline_fixture import (
    disjoint_stream,
    disjoint_stream_spec,
    js_only_drift,
    pipeline_components,
)
from .prompt_fixture import (
    affinity_scorer,
    behavior_features,
    engine_template,
    feature_basis,
    make_component,
    s1_scenario,
    token_budget,
    unit_cost_config,
)
from .remote_fixture import make_json_response, mock_http_session, remote_client
from .settings_fixture import mock_settings, restore_pipeline_logger
