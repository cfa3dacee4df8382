import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence

import numpy as np

from intent_pipeline.constants import SAMPLE_SOURCES
from intent_pipeline.corpus.models import MixConfig, TrainingSample
from intent_pipeline.exceptions import ConfigurationError, InsufficientSamples
from intent_pipeline.utils.files import iter_jsonl, write_jsonl

logger = logging.getLogger(__name__)


def largest_remainder_quotas(
    ratios: Mapping[str, float], total_size: int
) -> Dict[str, int]:
    """Apportion ``total_size`` by ``ratios`` so the quotas sum exactly.

    Ratios are read as exact decimals and renormalized. Every source gets
    the floor of its share, then the leftover units go to the largest
    remainders, ties in source order.

    """
    exact = {source: Fraction(str(ratio)) for source, ratio in ratios.items()}
    weight = sum(exact.values(), Fraction(0))
    if weight <= 0:
        raise ConfigurationError("at least one corpus ratio must be positive")
    shares = {source: value / weight * total_size for source, value in exact.items()}
    quotas = {source: int(share) for source, share in shares.items()}
    leftover = total_size - sum(quotas.values())
    order = list(ratios)
    by_remainder = sorted(
        order, key=lambda source: (-(shares[source] - quotas[source]), order.index(source))
    )
    for source in by_remainder[:leftover]:
        quotas[source] += 1
    return quotas


def mix(
    per_source: Mapping[str, Sequence[TrainingSample]],
    config: MixConfig,
    seed: int,
) -> List[TrainingSample]:
    """Draw each source's quota without replacement and shuffle the result.

    Raises:
        InsufficientSamples: If a source pool is smaller than its quota.

    """
    quotas = largest_remainder_quotas(config.ratios, config.total_size)
    rng = np.random.default_rng(seed)
    corpus: List[TrainingSample] = []
    for source in SAMPLE_SOURCES:
        quota = quotas.get(source, 0)
        pool = per_source.get(source, ())
        if quota > len(pool):
            raise InsufficientSamples(source, quota - len(pool))
        picked = rng.permutation(len(pool))[:quota]
        corpus.extend(pool[int(index)] for index in picked)
        logger.info("Drew %d of %d %s sample(s)", quota, len(pool), source)
    order = rng.permutation(len(corpus))
    return [corpus[int(index)] for index in order]


def dump_corpus(path: str, samples: Sequence[TrainingSample]) -> int:
    return write_jsonl(path, (sample.to_record() for sample in samples))


def load_corpus(path: str) -> List[TrainingSample]:
    return [TrainingSample.from_record(record) for _, record in iter_jsonl(path)]
