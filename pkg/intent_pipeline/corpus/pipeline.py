import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from intent_pipeline.behavior.tags import TagCatalog
from intent_pipeline.corpus.builders import (
    Rewriter,
    augment_rewrite,
    build_behavior_driven,
    build_co_purchase,
    identity_rewriter,
    ingest_human,
    load_logs,
)
from intent_pipeline.corpus.mixer import mix
from intent_pipeline.corpus.models import CoPurchaseMatrix, MixConfig, TrainingSample
from intent_pipeline.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusConfig:
    """Input files and knobs for a full corpus build.

    Only ``behavior_log`` is mandatory. A missing co-purchase matrix or
    human sample file leaves that source pool empty, which is an error
    only when the source's quota is non-zero.

    """

    behavior_log: Optional[str] = None
    catalog: Optional[str] = None
    co_purchase_matrix: Optional[str] = None
    human_samples: Optional[str] = None
    link_window_ms: int = 86_400_000
    top_k: int = 2
    window_size: int = 50
    seed: int = 0
    mix: MixConfig = field(default_factory=MixConfig)

    def __post_init__(self) -> None:
        if self.link_window_ms <= 0:
            raise ConfigurationError("corpus.link_window_ms must be > 0")
        if self.top_k < 1:
            raise ConfigurationError("corpus.top_k must be >= 1")
        if self.window_size < 1:
            raise ConfigurationError("corpus.window_size must be >= 1")
        if self.co_purchase_matrix and not self.catalog:
            raise ConfigurationError("corpus.catalog is required with a co-purchase matrix")


def build_source_pools(
    config: CorpusConfig, rewriter: Rewriter = identity_rewriter
) -> Dict[str, List[TrainingSample]]:
    if not config.behavior_log:
        raise ConfigurationError("corpus.behavior_log is required")

    events, searches = load_logs(config.behavior_log)
    pools: Dict[str, List[TrainingSample]] = {
        "behavior_driven": build_behavior_driven(
            events, searches, config.link_window_ms, config.window_size
        ),
        "co_purchase": [],
        "human": [],
    }
    if config.co_purchase_matrix and config.catalog:
        pools["co_purchase"] = build_co_purchase(
            CoPurchaseMatrix.from_tsv(config.co_purchase_matrix),
            TagCatalog.from_tsv(config.catalog),
            events,
            config.top_k,
            config.window_size,
        )
    pools["llm_rewrite"] = augment_rewrite(
        [*pools["behavior_driven"], *pools["co_purchase"]], rewriter
    )
    if config.human_samples:
        pools["human"] = ingest_human(config.human_samples)
    return pools


def build_corpus(
    config: CorpusConfig, rewriter: Rewriter = identity_rewriter
) -> List[TrainingSample]:
    pools = build_source_pools(config, rewriter)
    corpus = mix(pools, config.mix, config.seed)
    logger.info("Mixed a corpus of %d sample(s)", len(corpus))
    return corpus
