import sys
from typing import Tuple

import numpy as np
import pytest

from intent_pipeline.behavior.tags import TagDistribution, TagSet
from intent_pipeline.drift.divergence import entropy, entropy_delta, jaccard, js_divergence
from intent_pipeline.drift.trigger import DriftConfig, drift_score
from intent_pipeline.tests.constants import PYTHON_VERSION, PYTHON_VERSION_REASON

pytestmark = [
    pytest.mark.acceptance,
    pytest.mark.acceptance_drift_math,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]

CASES = 1_000
TOLERANCE = 1e-9
VOCABULARY = [f"tag-{index}" for index in range(8)]


def random_distribution(rng: np.random.Generator) -> TagDistribution:
    size = int(rng.integers(1, len(VOCABULARY) + 1))
    tags = rng.choice(VOCABULARY, size=size, replace=False)
    weights = rng.random(size) + 1e-3
    return TagDistribution.from_mapping(
        {str(tag): float(w) for tag, w in zip(tags, weights / weights.sum())}
    )


def random_pair(rng: np.random.Generator) -> Tuple[TagDistribution, TagDistribution]:
    return random_distribution(rng), random_distribution(rng)


def random_config(rng: np.random.Generator) -> DriftConfig:
    lambdas = rng.dirichlet(np.ones(3))
    return DriftConfig(
        lambda1=float(lambdas[0]),
        lambda2=float(lambdas[1]),
        lambda3=1.0 - float(lambdas[0]) - float(lambdas[1]),
        tau_trigger=float(rng.random()),
    )


class TestDriftMathProperties:
    """
    Property suite for the divergence measures over seeded random pairs.
    """

    def test_js_divergence(self) -> None:
        """
        Test the Jensen-Shannon divergence.

        Asserts:
        -------
            - It is symmetric and lies in [0, 1].
            - The divergence of a distribution with itself is 0.
        """
        rng = np.random.default_rng(11)
        for _ in range(CASES):
            p, q = random_pair(rng)
            forward = js_divergence(p, q)
            assert forward == pytest.approx(js_divergence(q, p), abs=TOLERANCE)
            assert -TOLERANCE <= forward <= 1.0 + TOLERANCE
            assert js_divergence(p, p) == pytest.approx(0.0, abs=TOLERANCE)

    def test_jaccard_and_entropy_bounds(self) -> None:
        """
        Test tag-set overlap and normalized entropy.

        Asserts:
        -------
            - Jaccard is symmetric, lies in [0, 1] and equals 1 on itself.
            - Normalized entropy and entropy change lie in [0, 1].
        """
        rng = np.random.default_rng(12)
        for _ in range(CASES):
            p, q = random_pair(rng)
            z_p, z_q = TagSet(p.support), TagSet(q.support)
            overlap = jaccard(z_p, z_q)
            assert overlap == jaccard(z_q, z_p)
            assert 0.0 <= overlap <= 1.0
            assert jaccard(z_p, z_p) == 1.0
            for value in (entropy(p), entropy(q), entropy_delta(p, q)):
                assert -TOLERANCE <= value <= 1.0 + TOLERANCE

    def test_fused_score_in_unit_interval(self) -> None:
        """
        Test the fused drift score under random valid weights.

        Asserts:
        -------
            - The fused score lies in [0, 1] and each part is in range.
        """
        rng = np.random.default_rng(13)
        for _ in range(CASES):
            p, q = random_pair(rng)
            score = drift_score(p, TagSet(p.support), q, TagSet(q.support), random_config(rng))
            assert -TOLERANCE <= score.fused <= 1.0 + TOLERANCE
            assert 0.0 <= score.jaccard <= 1.0
            assert -TOLERANCE <= score.js <= 1.0 + TOLERANCE

    def test_disjoint_supports_are_maximally_divergent(self) -> None:
        """
        Test distributions with no tag in common.

        Asserts:
        -------
            - JS divergence is 1 and Jaccard overlap is 0.
        """
        p = TagDistribution.from_mapping({"shoes": 0.5, "socks": 0.5})
        q = TagDistribution.from_mapping({"phones": 1.0})
        assert js_divergence(p, q) == pytest.approx(1.0, abs=TOLERANCE)
        assert jaccard(TagSet(p.support), TagSet(q.support)) == 0.0
