import math
import sys

import pytest

from intent_pipeline.behavior.tags import TagDistribution, TagSet
from intent_pipeline.drift.divergence import (
    entropy,
    entropy_delta,
    jaccard,
    js_divergence,
    raw_entropy,
)
from intent_pipeline.tests.constants import PYTHON_VERSION, PYTHON_VERSION_REASON

pytestmark = [
    pytest.mark.drift,
    pytest.mark.drift_divergence,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]

UNIFORM_4 = TagDistribution.from_mapping({t: 0.25 for t in "abcd"})
ONLY_A = TagDistribution.from_mapping({"a": 1.0})
HALF_AB = TagDistribution.from_mapping({"a": 0.5, "b": 0.5})


class TestEntropy:
    """
    Test suite for raw and normalized entropy.
    """

    def test_raw_entropy_in_bits(self) -> None:
        """
        Test the unnormalized entropy.

        Asserts:
        -------
            - A uniform distribution over four tags has two bits.
            - A point mass has zero bits.
        """
        assert raw_entropy(UNIFORM_4) == pytest.approx(2.0)
        assert raw_entropy(ONLY_A) == 0.0

    def test_normalized_entropy(self) -> None:
        """
        Test the entropy normalized by the support size.

        Asserts:
        -------
            - Uniform distributions normalize to 1.
            - A point mass is normalized by log2(2) and stays 0.
        """
        assert entropy(UNIFORM_4) == pytest.approx(1.0)
        assert entropy(HALF_AB) == pytest.approx(1.0)
        assert entropy(ONLY_A) == 0.0

    def test_entropy_delta_uses_union_support(self) -> None:
        """
        Test the entropy change between two windows.

        Asserts:
        -------
            - The change is divided by log2 of the union support size.
            - The measure is symmetric.
        """
        assert entropy_delta(ONLY_A, UNIFORM_4) == pytest.approx(1.0)
        only_c = TagDistribution.from_mapping({"c": 1.0})
        assert entropy_delta(HALF_AB, only_c) == pytest.approx(1.0 / math.log2(3))
        assert entropy_delta(only_c, HALF_AB) == entropy_delta(HALF_AB, only_c)


class TestJaccard:
    """
    Test suite for tag-set overlap.
    """

    def test_overlap(self) -> None:
        """
        Test the Jaccard similarity of tag sets.

        Asserts:
        -------
            - Partial overlap gives intersection over union.
            - Identical sets give 1 and disjoint sets give 0.
        """
        assert jaccard(TagSet.of("ab"), TagSet.of("bc")) == pytest.approx(1 / 3)
        assert jaccard(TagSet.of("ab"), TagSet.of("ab")) == 1.0
        assert jaccard(TagSet.of("a"), TagSet.of("b")) == 0.0

    def test_two_empty_sets_are_identical(self) -> None:
        """
        Test the empty edge case.

        Asserts:
        -------
            - Two empty sets count as full overlap.
        """
        assert jaccard(TagSet.of([]), TagSet.of([])) == 1.0


class TestJensenShannon:
    """
    Test suite for the Jensen-Shannon divergence.
    """

    def test_bounds(self) -> None:
        """
        Test the extreme values.

        Asserts:
        -------
            - Identical distributions give 0.
            - Disjoint supports give exactly 1 bit.
        """
        assert js_divergence(UNIFORM_4, UNIFORM_4) == pytest.approx(0.0, abs=1e-12)
        only_c = TagDistribution.from_mapping({"c": 1.0})
        assert js_divergence(ONLY_A, only_c) == pytest.approx(1.0)

    def test_partial_overlap_value(self) -> None:
        """
        Test a hand-computed divergence.

        Asserts:
        -------
            - The value matches the midpoint formula in bits.
            - The divergence is symmetric.
        """
        expected = 0.5 * (math.log2(4 / 3) + 0.5 * math.log2(2 / 3) + 0.5)
        assert js_divergence(ONLY_A, HALF_AB) == pytest.approx(expected)
        assert js_divergence(HALF_AB, ONLY_A) == pytest.approx(expected)
