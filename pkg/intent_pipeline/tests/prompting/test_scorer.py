import sys

import numpy as np
import pytest

from intent_pipeline.exceptions import ConfigurationError
from intent_pipeline.features.extraction import BehaviorFeatures
from intent_pipeline.prompting.models import Prompt, PromptTemplate, ScenarioContext
from intent_pipeline.prompting.scorer import FeatureBasis, LinearAffinityScorer
from intent_pipeline.tests.constants import (
    ENGINE_TEMPLATE_BODY,
    PYTHON_VERSION,
    PYTHON_VERSION_REASON,
)
from intent_pipeline.tests.fixtures.prompt_fixture import ComponentFactory, s1_affinity

pytestmark = [
    pytest.mark.prompting,
    pytest.mark.prompting_engine,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]


class TestFeatureBasis:
    """
    Test suite for the scorer input basis.
    """

    def test_vector_appends_scenario_one_hot(
        self, feature_basis: FeatureBasis, behavior_features: BehaviorFeatures
    ) -> None:
        """
        Test the scorer input layout.

        Asserts:
        -------
            - The vector has 7 behavior dimensions followed by the one-hot block.
            - An unlisted scenario gets an all-zero block.
        """
        assert feature_basis.dimension == 9
        vector = feature_basis.vector(behavior_features, ScenarioContext("s2"))
        np.testing.assert_array_equal(vector[7:], [0.0, 1.0])
        np.testing.assert_array_equal(vector[:7], behavior_features.as_vector())

        unknown = feature_basis.vector(behavior_features, ScenarioContext("s9"))
        assert not unknown[7:].any()

    def test_invalid_bases_and_affinities(self, feature_basis: FeatureBasis) -> None:
        """
        Test the basis checks.

        Asserts:
        -------
            - Duplicate scenarios raise `ConfigurationError`.
            - A wrong affinity length or a non-finite weight raises `ConfigurationError`.
        """
        with pytest.raises(ConfigurationError):
            FeatureBasis(["s1", "s1"])
        with pytest.raises(ConfigurationError):
            feature_basis.check("component 'x'", [1.0, 2.0])
        with pytest.raises(ConfigurationError):
            feature_basis.check("component 'x'", [float("nan")] * 9)


class TestLinearAffinityScorer:
    """
    Test suite for `LinearAffinityScorer`.
    """

    def test_score_is_sum_of_dot_products(
        self,
        affinity_scorer: LinearAffinityScorer,
        behavior_features: BehaviorFeatures,
        s1_scenario: ScenarioContext,
        make_component: ComponentFactory,
    ) -> None:
        """
        Test that template and components add their own contributions.

        Asserts:
        -------
            - The template scores its scenario weight.
            - Each component adds its own weight regardless of the others.
        """
        template = PromptTemplate("t", ENGINE_TEMPLATE_BODY, tuple(s1_affinity(2.0)))
        prompt = Prompt(template)
        assert affinity_scorer.score(prompt, behavior_features, s1_scenario) == 2.0

        extended = prompt.with_component(make_component("a", "x", 0.5)).with_component(
            make_component("b", "y", -1.5)
        )
        assert affinity_scorer.score(extended, behavior_features, s1_scenario) == 1.0

    def test_behavior_weights_use_features(
        self,
        affinity_scorer: LinearAffinityScorer,
        behavior_features: BehaviorFeatures,
    ) -> None:
        """
        Test a template weighting the behavior dimensions.

        Asserts:
        -------
            - Recency weighs in through its feature value.
        """
        affinity = [0.0] * 9
        affinity[4] = 2.0
        template = PromptTemplate("t", ENGINE_TEMPLATE_BODY, tuple(affinity))
        score = affinity_scorer.score(
            Prompt(template), behavior_features, ScenarioContext("s2")
        )
        assert score == pytest.approx(1.0)

    def test_wrong_dimension_is_rejected(
        self,
        affinity_scorer: LinearAffinityScorer,
        behavior_features: BehaviorFeatures,
        s1_scenario: ScenarioContext,
    ) -> None:
        """
        Test scoring a template built for another basis.

        Asserts:
        -------
            - `ConfigurationError` is raised.
        """
        template = PromptTemplate("t", ENGINE_TEMPLATE_BODY, (1.0,) * 11)
        with pytest.raises(ConfigurationError):
            affinity_scorer.score(Prompt(template), behavior_features, s1_scenario)
