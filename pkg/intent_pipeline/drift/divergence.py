"""Information-theoretic primitives over tag distributions.

All logarithms are base 2, so the Jensen-Shannon divergence lies in [0, 1]
and normalized entropies do too.
"""

import math
from typing import Tuple

import numpy as np
from scipy.special import rel_entr
from scipy.stats import entropy as shannon_entropy

from intent_pipeline.behavior.tags import TagDistribution, TagSet


def _clamp_unit(value: float) -> float:
    return min(1.0, max(0.0, float(value)))


def aligned_vectors(
    p: TagDistribution, q: TagDistribution
) -> Tuple[np.ndarray, np.ndarray]:
    """Project two distributions onto the sorted union of their supports."""
    tags = sorted(p.support | q.support)
    p_map, q_map = p.as_dict(), q.as_dict()
    return (
        np.array([p_map.get(tag, 0.0) for tag in tags], dtype=np.float64),
        np.array([q_map.get(tag, 0.0) for tag in tags], dtype=np.float64),
    )


def raw_entropy(p: TagDistribution) -> float:
    """Shannon entropy in bits, unnormalized."""
    probs = np.array([prob for _, prob in p.probs], dtype=np.float64)
    return float(shannon_entropy(probs, base=2))


def normalizer(support_size: int) -> float:
    return math.log2(max(2, support_size))


def entropy(p: TagDistribution) -> float:
    """Entropy normalized by ``log2(max(2, |support|))``, in [0, 1]."""
    return _clamp_unit(raw_entropy(p) / normalizer(len(p.support)))


def entropy_delta(p_t: TagDistribution, p_prev: TagDistribution) -> float:
    """Absolute entropy change, both sides normalized over the union support."""
    scale = normalizer(len(p_t.support | p_prev.support))
    return _clamp_unit(abs(raw_entropy(p_t) - raw_entropy(p_prev)) / scale)


def jaccard(z_t: TagSet, z_prev: TagSet) -> float:
    """Tag-set overlap; two empty sets count as no shift (1.0)."""
    union = z_t.tags | z_prev.tags
    if not union:
        return 1.0
    return len(z_t.tags & z_prev.tags) / len(union)


def js_divergence(p_t: TagDistribution, p_prev: TagDistribution) -> float:
    """Jensen-Shannon divergence in bits against the midpoint distribution."""
    p, q = aligned_vectors(p_t, p_prev)
    m = 0.5 * (p + q)
    # rel_entr treats 0 * log(0 / m) as 0
    divergence = 0.5 * (float(np.sum(rel_entr(p, m))) + float(np.sum(rel_entr(q, m))))
    return _clamp_unit(divergence / math.log(2))
