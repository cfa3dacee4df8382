from abc import ABC, abstractmethod
from typing import Sequence, Tuple

import numpy as np

from intent_pipeline.exceptions import ConfigurationError
from intent_pipeline.features.extraction import BehaviorFeatures
from intent_pipeline.prompting.models import Prompt, ScenarioContext

BEHAVIOR_DIMENSIONS = 7


class FeatureBasis:
    """Builds the scorer input ``x = [act_dist, recency, diversity,
    frequency, scenario one-hot]``.

    A scenario outside the known list gets an all-zero one-hot block.

    """

    def __init__(self, scenarios: Sequence[str]) -> None:
        if len(set(scenarios)) != len(scenarios):
            raise ConfigurationError("prompt.scenarios must be unique")
        self.scenarios: Tuple[str, ...] = tuple(scenarios)

    @property
    def dimension(self) -> int:
        return BEHAVIOR_DIMENSIONS + len(self.scenarios)

    def vector(self, features: BehaviorFeatures, scenario: ScenarioContext) -> np.ndarray:
        one_hot = np.zeros(len(self.scenarios), dtype=np.float64)
        if scenario.scenario_id in self.scenarios:
            one_hot[self.scenarios.index(scenario.scenario_id)] = 1.0
        return np.concatenate([features.as_vector(), one_hot])

    def check(self, owner: str, affinity: Sequence[float]) -> None:
        if len(affinity) != self.dimension:
            raise ConfigurationError(
                f"{owner} has {len(affinity)} affinity weights, expected {self.dimension}"
            )
        if not np.all(np.isfinite(affinity)):
            raise ConfigurationError(f"{owner} has non-finite affinity weights")


class ScorerModel(ABC):
    """Pluggable prompt scorer ``M_score(P, features, scenario)``."""

    @abstractmethod
    def score(
        self, prompt: Prompt, features: BehaviorFeatures, scenario: ScenarioContext
    ) -> float:
        """Return a finite utility for ``prompt`` under the given context."""


class LinearAffinityScorer(ScorerModel):
    """Scores a prompt as the dot product of its summed affinities with x.

    The template and each accepted component contribute their own dot
    product, so a component's marginal gain never depends on which other
    components are already in the prompt.

    """

    def __init__(self, basis: FeatureBasis) -> None:
        self.basis = basis

    def score(
        self, prompt: Prompt, features: BehaviorFeatures, scenario: ScenarioContext
    ) -> float:
        x = self.basis.vector(features, scenario)
        parts = [(f"template '{prompt.template.id}'", prompt.template.affinity)]
        parts.extend(
            (f"component '{c.id}'", c.affinity) for c in prompt.accepted_components
        )
        total = 0.0
        for owner, affinity in parts:
            self.basis.check(owner, affinity)
            total += float(np.dot(np.asarray(affinity, dtype=np.float64), x))
        return total
