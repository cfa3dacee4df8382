import math
from collections import Counter
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from intent_pipeline.behavior.events import ACTION_ORDER, BehaviorWindow
from intent_pipeline.behavior.tags import TagCatalog, map_to_tags
from intent_pipeline.drift.divergence import entropy
from intent_pipeline.exceptions import ConfigurationError, DataError, EmptyWindow

MS_PER_MINUTE = 60_000


@dataclass(frozen=True)
class FeatureConfig:
    recency_halflife_ms: int = 3_600_000
    freq_span_floor_ms: int = 1_000

    def __post_init__(self) -> None:
        if self.recency_halflife_ms <= 0:
            raise ConfigurationError("feature.recency_halflife_ms must be > 0")
        if self.freq_span_floor_ms <= 0:
            raise ConfigurationError("feature.freq_span_floor_ms must be > 0")


@dataclass(frozen=True)
class BehaviorFeatures:
    """Behavior summary: action mix, recency, diversity and frequency.

    ``act_dist`` follows the order click, cart, favorite, purchase.

    """

    act_dist: Tuple[float, float, float, float]
    recency: float
    diversity: float
    frequency: float

    def __post_init__(self) -> None:
        if len(self.act_dist) != len(ACTION_ORDER):
            raise DataError("act_dist needs one probability per action type")
        if abs(math.fsum(self.act_dist) - 1.0) > 1e-9:
            raise DataError("act_dist must sum to 1")
        for value in (*self.act_dist, self.recency, self.diversity, self.frequency):
            if not 0.0 <= value <= 1.0:
                raise DataError("feature components must lie in [0, 1]")

    def as_vector(self) -> np.ndarray:
        return np.array(
            [*self.act_dist, self.recency, self.diversity, self.frequency],
            dtype=np.float64,
        )


def extract_features(
    window: BehaviorWindow,
    catalog: TagCatalog,
    now: int,
    config: FeatureConfig = FeatureConfig(),
) -> BehaviorFeatures:
    """Compute the behavior feature vector of a window at time ``now``.

    - act_dist: normalized action-type counts.
    - recency: mean of ``exp(-(now - t) / H)`` over events.
    - diversity: tag entropy normalized by ``log2(max(2, |Z|))``.
    - frequency: ``k / (k + 1)`` for k events per minute over the window span,
      the span floored at ``freq_span_floor_ms``.

    Raises:
        EmptyWindow: If the window has no events.
        DataError: If ``now`` precedes the newest event.

    """
    if not window.events:
        raise EmptyWindow("cannot extract features from an empty window")
    newest = window.events[-1].timestamp
    if now < newest:
        raise DataError(f"now ({now}) precedes the newest event ({newest})")

    n = len(window.events)
    counts = Counter(event.action for event in window.events)
    act_dist = tuple(counts.get(action, 0) / n for action in ACTION_ORDER)

    ages = np.array([now - event.timestamp for event in window.events], dtype=np.float64)
    recency = float(np.mean(np.exp(-ages / config.recency_halflife_ms)))

    _, distribution = map_to_tags(window, catalog)
    diversity = entropy(distribution)

    span_ms = max(newest - window.events[0].timestamp, config.freq_span_floor_ms)
    per_minute = n / (span_ms / MS_PER_MINUTE)
    frequency = per_minute / (per_minute + 1.0)

    return BehaviorFeatures(
        act_dist=act_dist,  # type: ignore[arg-type]
        recency=min(1.0, max(0.0, recency)),
        diversity=diversity,
        frequency=frequency,
    )
