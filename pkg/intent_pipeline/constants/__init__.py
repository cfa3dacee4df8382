from .default_settings import (
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
from .exit_codes import EXIT_CONFIG_ERROR, EXIT_DATA_ERROR, EXIT_GENERATION_ERROR
from .log_format_options import DATE_FORMAT_DIRECTIVES, LOG_FORMAT_SPECIFIERS
from .prompts import DEFAULT_COMPONENTS, DEFAULT_TEMPLATES, EVAL_PROMPT, UNKNOWN_TAG

ALLOWED_LOG_FORMAT_TYPES = ["NORMAL", "JSON", "FLAT"]
ALLOWED_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
ALLOWED_WINDOW_POLICIES = ["count", "time"]
ALLOWED_GENERATOR_KINDS = ["mock", "remote"]
ALLOWED_CLOCKS = ["simulated", "wall"]
SAMPLE_SOURCES = ["behavior_driven", "co_purchase", "llm_rewrite", "human"]
