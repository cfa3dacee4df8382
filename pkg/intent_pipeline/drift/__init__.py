from .divergence import entropy, entropy_delta, jaccard, js_divergence
from .trigger import (
    DriftConfig,
    DriftScore,
    DriftState,
    TriggerDecision,
    TriggerReason,
    drift_score,
    should_trigger,
)
