import sys

import pytest

from intent_pipeline.exceptions import ConfigurationError, DataError, DuplicateComponent
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
from intent_pipeline.tests.constants import PYTHON_VERSION, PYTHON_VERSION_REASON
from intent_pipeline.tests.fixtures.prompt_fixture import ComponentFactory, s1_affinity

pytestmark = [
    pytest.mark.prompting,
    pytest.mark.prompting_models,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]


class TestPromptTemplate:
    """
    Test suite for `PromptTemplate` validation and scenario filtering.
    """

    @pytest.mark.parametrize(
        "body",
        [
            "no slots at all",
            "{timestamp} only",
            "{timestamp} {timestamp} {behavior_sequence}",
            "{behavior_sequence} twice {behavior_sequence} at {timestamp}",
        ],
    )
    def test_body_needs_each_slot_once(self, body: str) -> None:
        """
        Test the slot invariant of template bodies.

        Asserts:
        -------
            - A missing or repeated slot raises `ConfigurationError`.
        """
        with pytest.raises(ConfigurationError):
            PromptTemplate(id="t", body=body, affinity=tuple(s1_affinity(0.0)))

    def test_scenario_applicability(self, engine_template: PromptTemplate) -> None:
        """
        Test which scenarios a template serves.

        Asserts:
        -------
            - A template without scenario ids is universal.
            - A restricted template serves only its scenarios.
        """
        restricted = PromptTemplate(
            id="r",
            body=engine_template.body,
            affinity=engine_template.affinity,
            scenario_ids=frozenset({"s2"}),
        )
        assert engine_template.applies_to(ScenarioContext("anything"))
        assert restricted.applies_to(ScenarioContext("s2"))
        assert not restricted.applies_to(ScenarioContext("s1"))

    def test_scenario_id_must_be_set(self) -> None:
        """
        Test the scenario context invariant.

        Asserts:
        -------
            - An empty scenario id raises `DataError`.
        """
        with pytest.raises(DataError):
            ScenarioContext("")


class TestPromptComponent:
    """
    Test suite for `PromptComponent`.
    """

    def test_create_counts_tokens(self, make_component: ComponentFactory) -> None:
        """
        Test that `create` derives the token cost from the text.

        Asserts:
        -------
            - The token cost equals the tokenizer count.
        """
        assert make_component("a", "keep it short, please", 1.0).token_cost == 5

    def test_declared_cost_must_match(self) -> None:
        """
        Test a component whose declared cost disagrees with its text.

        Asserts:
        -------
            - `ConfigurationError` is raised.
        """
        with pytest.raises(ConfigurationError):
            PromptComponent("a", "two words", tuple(s1_affinity(1.0)), token_cost=3)


class TestBudgetAndCost:
    """
    Test suite for budgets and the affine cost model.
    """

    def test_cost_estimate_is_affine(self) -> None:
        """
        Test the default cost model.

        Asserts:
        -------
            - Latency is 2 ms per token plus 50 ms.
            - Memory is 4 KB per token plus 2048 KB.
        """
        estimate = CostEstimate.for_tokens(100, CostConfig())
        assert estimate.latency_ms == 250.0
        assert estimate.memory_kb == 2_448.0

    def test_within_is_inclusive_on_every_axis(self) -> None:
        """
        Test the budget check.

        Asserts:
        -------
            - A cost equal to the limits fits.
            - Exceeding any single axis does not fit.
        """
        budget = BudgetLimits(max_tokens=100, max_latency_ms=250.0, max_memory_kb=2_448.0)
        assert CostEstimate(100, 250.0, 2_448.0).within(budget)
        assert not CostEstimate(101, 250.0, 2_448.0).within(budget)
        assert not CostEstimate(100, 250.1, 2_448.0).within(budget)
        assert not CostEstimate(100, 250.0, 2_448.5).within(budget)

    def test_invalid_configs(self) -> None:
        """
        Test the config invariants.

        Asserts:
        -------
            - Non-positive budget axes, negative slopes and a non-positive beta
              raise `ConfigurationError`.
        """
        with pytest.raises(ConfigurationError):
            BudgetLimits(0, 1.0, 1.0)
        with pytest.raises(ConfigurationError):
            CostConfig(latency_a=-1.0)
        with pytest.raises(ConfigurationError):
            PromptEngineConfig(beta=0.0)


class TestPrompt:
    """
    Test suite for prompt composition.
    """

    def test_components_are_distinct(
        self, engine_template: PromptTemplate, make_component: ComponentFactory
    ) -> None:
        """
        Test adding and removing components.

        Asserts:
        -------
            - `with_component` appends and `without_component` removes by id.
            - Adding a component twice raises `DuplicateComponent`.
        """
        a = make_component("a", "one", 1.0)
        b = make_component("b", "two", 1.0)
        prompt = Prompt(engine_template).with_component(a).with_component(b)

        assert [c.id for c in prompt.accepted_components] == ["a", "b"]
        assert prompt.has_component(a)
        assert not prompt.without_component(a).has_component(a)
        with pytest.raises(DuplicateComponent):
            prompt.with_component(a)
        with pytest.raises(DuplicateComponent):
            Prompt(engine_template, (a, a))
