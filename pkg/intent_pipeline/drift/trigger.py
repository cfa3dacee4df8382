import logging
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Tuple

from intent_pipeline.behavior.events import BehaviorWindow
from intent_pipeline.behavior.tags import TagCatalog, TagDistribution, TagSet, map_to_tags
from intent_pipeline.drift.divergence import entropy_delta, jaccard, js_divergence
from intent_pipeline.exceptions import ConfigurationError, DataError

logger = logging.getLogger(__name__)

WEIGHT_TOLERANCE = 1e-9


class TriggerReason(str, Enum):
    BOOTSTRAP = "bootstrap"
    DRIFT_EXCEEDED = "drift_exceeded"
    BELOW_THRESHOLD = "below_threshold"
    COOLDOWN = "cooldown"
    WINDOW_TOO_SMALL = "window_too_small"


FIRING_REASONS = frozenset({TriggerReason.BOOTSTRAP, TriggerReason.DRIFT_EXCEEDED})


@dataclass(frozen=True)
class DriftConfig:
    """Fusion weights, trigger threshold and gating knobs.

    The defaults are the heuristically searched values of the online
    deployment: lambda = (0.4, 0.3, 0.3), tau = 0.8.

    """

    lambda1: float = 0.4
    lambda2: float = 0.3
    lambda3: float = 0.3
    tau_trigger: float = 0.8
    min_window_size: int = 5
    cooldown_ms: int = 0

    def __post_init__(self) -> None:
        weights = (self.lambda1, self.lambda2, self.lambda3)
        if any(w < 0 for w in weights):
            raise ConfigurationError("drift lambdas must be non-negative")
        if abs(math.fsum(weights) - 1.0) > WEIGHT_TOLERANCE:
            raise ConfigurationError(
                f"drift lambdas must sum to 1, got {math.fsum(weights)}"
            )
        if not 0.0 <= self.tau_trigger <= 1.0:
            raise ConfigurationError("drift tau must lie in [0, 1]")
        if self.min_window_size < 1:
            raise ConfigurationError("drift min_window must be >= 1")
        if self.cooldown_ms < 0:
            raise ConfigurationError("drift cooldown_ms must be >= 0")


@dataclass(frozen=True)
class DriftState:
    """Baseline captured at the last trigger point."""

    prev_dist: Optional[TagDistribution] = None
    prev_tags: Optional[TagSet] = None
    last_trigger_ts: Optional[int] = None

    def __post_init__(self) -> None:
        if (self.prev_dist is None) != (self.prev_tags is None):
            raise DataError("prev_dist and prev_tags must be set together")
        if self.prev_dist is not None and self.prev_tags is not None:
            if self.prev_dist.support != self.prev_tags.tags:
                raise DataError("prev_tags must equal the support of prev_dist")

    @property
    def has_baseline(self) -> bool:
        return self.prev_dist is not None


@dataclass(frozen=True)
class DriftScore:
    entropy_delta: float
    jaccard: float
    js: float
    fused: float


@dataclass(frozen=True)
class TriggerDecision:
    fired: bool
    reason: TriggerReason
    score: Optional[DriftScore] = None

    def __post_init__(self) -> None:
        if self.fired != (self.reason in FIRING_REASONS):
            raise DataError(f"decision fired={self.fired} contradicts {self.reason}")


def drift_score(
    p_t: TagDistribution,
    z_t: TagSet,
    p_prev: TagDistribution,
    z_prev: TagSet,
    config: DriftConfig,
) -> DriftScore:
    """Fuse entropy change, tag-set overlap and JS divergence into one score."""
    delta_h = entropy_delta(p_t, p_prev)
    overlap = jaccard(z_t, z_prev)
    js = js_divergence(p_t, p_prev)
    fused = (
        config.lambda1 * delta_h
        + config.lambda2 * (1.0 - overlap)
        + config.lambda3 * js
    )
    return DriftScore(
        entropy_delta=delta_h,
        jaccard=overlap,
        js=js,
        fused=min(1.0, max(0.0, fused)),
    )


def should_trigger(
    state: DriftState,
    window: BehaviorWindow,
    catalog: TagCatalog,
    config: DriftConfig,
) -> Tuple[TriggerDecision, DriftState]:
    """Decide whether the current window warrants a new prediction.

    The comparison baseline is the window seen at the last trigger point; a
    non-firing evaluation returns ``state`` itself, untouched.

    Returns:
        Tuple[TriggerDecision, DriftState]: The decision and the next state.

    """
    if len(window) < config.min_window_size:
        return TriggerDecision(False, TriggerReason.WINDOW_TOO_SMALL), state

    tags, dist = map_to_tags(window, catalog)
    now = window.newest_timestamp

    if state.prev_dist is None or state.prev_tags is None:
        logger.debug("Bootstrap trigger at %s with %s event(s)", now, len(window))
        return TriggerDecision(True, TriggerReason.BOOTSTRAP), DriftState(
            prev_dist=dist, prev_tags=tags, last_trigger_ts=now
        )

    if (
        config.cooldown_ms > 0
        and state.last_trigger_ts is not None
        and now is not None
        and now - state.last_trigger_ts < config.cooldown_ms
    ):
        return TriggerDecision(False, TriggerReason.COOLDOWN), state

    score = drift_score(dist, tags, state.prev_dist, state.prev_tags, config)
    if score.fused > config.tau_trigger:
        logger.debug(
            "Drift trigger at %s: fused=%.4f > tau=%.4f", now, score.fused, config.tau_trigger
        )
        return TriggerDecision(True, TriggerReason.DRIFT_EXCEEDED, score), replace(
            state, prev_dist=dist, prev_tags=tags, last_trigger_ts=now
        )
    return TriggerDecision(False, TriggerReason.BELOW_THRESHOLD, score), state
