from .engine import (
    adapt_structure,
    build_prompt,
    compose_prompt,
    enforce_budget,
    estimate_cost,
    instantiate,
    marginal_utility,
    render_behavior_sequence,
    score_template,
    select_template,
)
from .models import (
    BudgetLimits,
    CostConfig,
    CostEstimate,
    Prompt,
    PromptComponent,
    PromptEngineConfig,
    PromptTemplate,
    ScenarioContext,
)
from .pools import PromptPools, default_pools, load_components, load_pools, load_templates
from .scorer import FeatureBasis, LinearAffinityScorer, ScorerModel
from .tokenizer import count_tokens, tokenize, truncate_tokens
