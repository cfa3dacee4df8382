"""Adaptive prompt construction.

Template selection, structural adaptation under the on-device budget,
budget enforcement and behavior-token instantiation.
"""

import logging
from typing import Dict, Iterable, Optional, Sequence, Tuple, cast

import numpy as np

from intent_pipeline.behavior.events import BehaviorEvent, BehaviorWindow
from intent_pipeline.behavior.tags import TagCatalog
from intent_pipeline.constants.prompts import BEHAVIOR_SLOT, TIMESTAMP_SLOT
from intent_pipeline.exceptions import (
    DuplicateComponent,
    EmptyWindow,
    NoTemplates,
    NotApplicable,
    TemplateOverBudget,
)
from intent_pipeline.features.extraction import (
    BehaviorFeatures,
    FeatureConfig,
    extract_features,
)
from intent_pipeline.prompting.models import (
    BudgetLimits,
    CostConfig,
    CostEstimate,
    Prompt,
    PromptComponent,
    PromptEngineConfig,
    PromptTemplate,
    ScenarioContext,
)
from intent_pipeline.prompting.pools import PromptPools
from intent_pipeline.prompting.scorer import ScorerModel
from intent_pipeline.prompting.tokenizer import count_tokens
from intent_pipeline.utils.time import format_timestamp_ms

logger = logging.getLogger(__name__)

COMPONENT_SEPARATOR = "\n"
EVENT_SEPARATOR = ", "


def score_template(
    scorer: ScorerModel,
    template: PromptTemplate,
    features: BehaviorFeatures,
    scenario: ScenarioContext,
) -> float:
    if not template.applies_to(scenario):
        raise NotApplicable(
            f"template '{template.id}' does not serve scenario '{scenario.scenario_id}'"
        )
    return scorer.score(Prompt(template), features, scenario)


def softmax(scores: Sequence[float], beta: float) -> np.ndarray:
    """Numerically stable softmax over ``beta * scores``."""
    z = beta * np.asarray(scores, dtype=np.float64)
    z -= z.max()
    weights = np.exp(z)
    return weights / weights.sum()


def select_template(
    pool: Sequence[PromptTemplate],
    scorer: ScorerModel,
    features: BehaviorFeatures,
    scenario: ScenarioContext,
    config: PromptEngineConfig,
) -> Tuple[PromptTemplate, Dict[str, float]]:
    """Pick the template with the highest softmax probability.

    Returns:
        The chosen template and the probability of every template in
        ``pool`` keyed by template id. Ties go to the smallest id.

    """
    if not pool:
        raise NoTemplates(f"no template serves scenario '{scenario.scenario_id}'")

    ordered = sorted(pool, key=lambda template: template.id)
    alphas = [score_template(scorer, t, features, scenario) for t in ordered]
    probs = softmax(alphas, config.beta)

    # argmax over the exponent, not the probabilities, so underflow cannot flip it
    scaled = [config.beta * alpha for alpha in alphas]
    best = max(range(len(ordered)), key=lambda i: (scaled[i], -i))
    chosen = ordered[best]
    logger.debug(
        "Selected template '%s' (p=%.6f) among %d for scenario '%s'",
        chosen.id,
        probs[best],
        len(ordered),
        scenario.scenario_id,
    )
    return chosen, {t.id: float(p) for t, p in zip(ordered, probs)}


def marginal_utility(
    scorer: ScorerModel,
    prompt: Prompt,
    component: PromptComponent,
    features: BehaviorFeatures,
    scenario: ScenarioContext,
) -> float:
    if prompt.has_component(component):
        raise DuplicateComponent(f"component '{component.id}' already accepted")
    return scorer.score(
        prompt.with_component(component), features, scenario
    ) - scorer.score(prompt, features, scenario)


def estimate_cost(prompt: Prompt, cost_config: CostConfig) -> CostEstimate:
    """Cost of ``prompt`` before its behavior slot is filled.

    The template body is counted with its slots as literal placeholders and
    the behavior sequence is covered by the reserved slot allowance.

    """
    tokens = (
        count_tokens(prompt.template.body)
        + sum(component.token_cost for component in prompt.accepted_components)
        + cost_config.slot_allowance_tokens
    )
    return CostEstimate.for_tokens(tokens, cost_config)


def adapt_structure(
    prompt: Prompt,
    candidates: Iterable[PromptComponent],
    scorer: ScorerModel,
    features: BehaviorFeatures,
    scenario: ScenarioContext,
    config: PromptEngineConfig,
    budget: BudgetLimits,
    cost_config: CostConfig = CostConfig(),
) -> Prompt:
    """Greedily append components with a positive marginal gain that fit.

    Candidates are visited in descending standalone utility (utility on
    the bare template), ties by id. A candidate is accepted when its gain
    on the working prompt is strictly above ``config.tau_struct`` and the
    extended prompt stays within every budget axis.

    """
    bare = Prompt(prompt.template)
    pending = [c for c in candidates if not prompt.has_component(c)]
    standalone = {
        c.id: marginal_utility(scorer, bare, c, features, scenario) for c in pending
    }
    pending.sort(key=lambda c: (-standalone[c.id], c.id))

    working = prompt
    for component in pending:
        if working.has_component(component):
            continue
        gain = marginal_utility(scorer, working, component, features, scenario)
        if gain <= config.tau_struct:
            logger.debug("Rejected component '%s': gain %.6f", component.id, gain)
            continue
        extended = working.with_component(component)
        if not estimate_cost(extended, cost_config).within(budget):
            logger.debug("Rejected component '%s': over budget", component.id)
            continue
        working = extended
    return working


def enforce_budget(
    prompt: Prompt,
    scorer: ScorerModel,
    features: BehaviorFeatures,
    scenario: ScenarioContext,
    budget: BudgetLimits,
    cost_config: CostConfig = CostConfig(),
) -> Prompt:
    """Prune accepted components until the prompt fits ``budget``.

    The component whose removal loses the least utility goes first, ties
    removing the larger id. The template is never removed.

    """
    if estimate_cost(prompt, cost_config).within(budget):
        return prompt

    bare = Prompt(prompt.template)
    if not estimate_cost(bare, cost_config).within(budget):
        raise TemplateOverBudget(
            f"template '{prompt.template.id}' alone exceeds the budget {budget}"
        )

    working = prompt
    while not estimate_cost(working, cost_config).within(budget):
        current = scorer.score(working, features, scenario)
        # descending ids so that min() keeps the larger id among equal losses
        ordered = sorted(
            working.accepted_components, key=lambda c: c.id, reverse=True
        )
        victim = min(
            ordered,
            key=lambda c: current
            - scorer.score(working.without_component(c), features, scenario),
        )
        logger.debug("Pruned component '%s' to meet the budget", victim.id)
        working = working.without_component(victim)
    return working


def render_event(event: BehaviorEvent) -> str:
    return (
        f"({event.item_id}, {event.action.value}, "
        f"{format_timestamp_ms(event.timestamp)})"
    )


def render_behavior_sequence(events: Sequence[BehaviorEvent]) -> str:
    return EVENT_SEPARATOR.join(render_event(event) for event in events)


def _render(prompt: Prompt, events: Sequence[BehaviorEvent], now: int) -> str:
    body = prompt.template.body.replace(
        TIMESTAMP_SLOT, format_timestamp_ms(now)
    ).replace(BEHAVIOR_SLOT, render_behavior_sequence(events))
    return COMPONENT_SEPARATOR.join(
        [body, *(component.text for component in prompt.accepted_components)]
    )


def instantiate(
    prompt: Prompt,
    window: BehaviorWindow,
    now: int,
    budget: Optional[BudgetLimits] = None,
    cost_config: CostConfig = CostConfig(),
) -> Prompt:
    """Fill the template slots and append the accepted component texts.

    When ``budget`` is given the final text is re-costed on all three axes
    and the oldest events are dropped until it fits.

    Returns:
        A copy of ``prompt`` whose ``instantiated`` field holds the text.

    """
    if not window.events:
        raise EmptyWindow("cannot instantiate a prompt from an empty window")

    events = list(window.events)
    text = _render(prompt, events, now)
    if budget is not None:
        dropped = 0
        while not CostEstimate.for_tokens(count_tokens(text), cost_config).within(
            budget
        ):
            if len(events) == 1:
                raise TemplateOverBudget(
                    f"template '{prompt.template.id}' cannot fit a single event "
                    f"within the budget {budget}"
                )
            events.pop(0)
            dropped += 1
            text = _render(prompt, events, now)
        if dropped:
            logger.debug(
                "Dropped %d oldest event(s) to keep the prompt within %d tokens",
                dropped,
                budget.max_tokens,
            )
    return Prompt(prompt.template, prompt.accepted_components, text)


def compose_prompt(
    window: BehaviorWindow,
    catalog: TagCatalog,
    scenario: ScenarioContext,
    pools: PromptPools,
    scorer: ScorerModel,
    config: PromptEngineConfig,
    budget: BudgetLimits,
    now: int,
    cost_config: CostConfig = CostConfig(),
    feature_config: FeatureConfig = FeatureConfig(),
) -> Prompt:
    """Run the full construction and return the instantiated prompt."""
    features = extract_features(window, catalog, now, feature_config)
    template, _ = select_template(
        pools.templates_for(scenario), scorer, features, scenario, config
    )
    prompt = adapt_structure(
        Prompt(template),
        pools.components,
        scorer,
        features,
        scenario,
        config,
        budget,
        cost_config,
    )
    prompt = enforce_budget(prompt, scorer, features, scenario, budget, cost_config)
    return instantiate(prompt, window, now, budget, cost_config)


def build_prompt(
    window: BehaviorWindow,
    catalog: TagCatalog,
    scenario: ScenarioContext,
    pools: PromptPools,
    scorer: ScorerModel,
    config: PromptEngineConfig,
    budget: BudgetLimits,
    now: int,
    cost_config: CostConfig = CostConfig(),
    feature_config: FeatureConfig = FeatureConfig(),
) -> str:
    prompt = compose_prompt(
        window,
        catalog,
        scenario,
        pools,
        scorer,
        config,
        budget,
        now,
        cost_config,
        feature_config,
    )
    return cast(str, prompt.instantiated)
