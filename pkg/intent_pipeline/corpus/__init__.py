from .builders import (
    GeneratorRewriter,
    augment_rewrite,
    build_behavior_driven,
    build_co_purchase,
    identity_rewriter,
    ingest_human,
    load_logs,
)
from .mixer import dump_corpus, largest_remainder_quotas, load_corpus, mix
from .models import CoPurchaseMatrix, MixConfig, SearchQuery, TrainingSample
from .pipeline import CorpusConfig, build_corpus, build_source_pools
