import math
from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from intent_pipeline.behavior.events import BehaviorWindow
from intent_pipeline.constants.prompts import UNKNOWN_TAG
from intent_pipeline.exceptions import ConfigurationError, DataError, EmptyWindow
from intent_pipeline.utils.files import iter_tsv

PROBABILITY_TOLERANCE = 1e-9


class TagCatalog:
    """Read-only mapping from item ids to semantic tags.

    Items missing from the catalog resolve to the reserved ``unknown`` tag,
    which always counts towards the vocabulary.

    """

    def __init__(self, item_tags: Mapping[str, str]) -> None:
        for item_id, tag in item_tags.items():
            if not item_id or not tag:
                raise ConfigurationError("catalog item ids and tags must be non-empty")
        self._item_tags: Mapping[str, str] = MappingProxyType(dict(item_tags))
        self.vocabulary: FrozenSet[str] = frozenset(self._item_tags.values()) | {
            UNKNOWN_TAG
        }
        if self.vocabulary_size < 2:
            raise ConfigurationError(
                "a catalog needs at least one tag besides 'unknown'"
            )

    @property
    def vocabulary_size(self) -> int:
        return len(self.vocabulary)

    def __contains__(self, item_id: object) -> bool:
        return item_id in self._item_tags

    def __len__(self) -> int:
        return len(self._item_tags)

    def tag_of(self, item_id: str) -> str:
        return self._item_tags.get(item_id, UNKNOWN_TAG)

    def items_with_tag(self, tag: str) -> Tuple[str, ...]:
        return tuple(sorted(i for i, t in self._item_tags.items() if t == tag))

    def items(self) -> Iterable[Tuple[str, str]]:
        return self._item_tags.items()

    @classmethod
    def from_tsv(cls, path: str) -> "TagCatalog":
        """Load ``item_id <TAB> tag`` rows; later rows override earlier ones."""
        item_tags: Dict[str, str] = {}
        for _, fields in iter_tsv(path, min_fields=2):
            item_tags[fields[0]] = fields[1]
        return cls(item_tags)

    def to_tsv(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as outfile:
            for item_id, tag in sorted(self._item_tags.items()):
                outfile.write(f"{item_id}\t{tag}\n")


@dataclass(frozen=True)
class TagDistribution:
    """Normalized tag distribution; zero-mass tags are omitted.

    ``probs`` is stored as ``(tag, probability)`` pairs sorted by tag so
    equal distributions compare and hash equal.

    """

    probs: Tuple[Tuple[str, float], ...]

    def __post_init__(self) -> None:
        if not self.probs:
            raise DataError("a distribution needs at least one tag")
        tags = [tag for tag, _ in self.probs]
        if tags != sorted(set(tags)):
            raise DataError("distribution tags must be unique and sorted")
        if any(not 0.0 < p <= 1.0 + PROBABILITY_TOLERANCE for _, p in self.probs):
            raise DataError("every stored probability must lie in (0, 1]")
        if abs(math.fsum(p for _, p in self.probs) - 1.0) > PROBABILITY_TOLERANCE:
            raise DataError("probabilities must sum to 1")

    @classmethod
    def from_mapping(cls, probs: Mapping[str, float]) -> "TagDistribution":
        return cls(tuple(sorted((t, float(p)) for t, p in probs.items() if p > 0)))

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "TagDistribution":
        total = sum(counts.values())
        if total <= 0:
            raise EmptyWindow("cannot normalize an empty tag count")
        return cls(
            tuple(sorted((tag, n / total) for tag, n in counts.items() if n > 0))
        )

    def as_dict(self) -> Dict[str, float]:
        return dict(self.probs)

    def get(self, tag: str) -> float:
        return self.as_dict().get(tag, 0.0)

    @property
    def support(self) -> FrozenSet[str]:
        return frozenset(tag for tag, _ in self.probs)

    def dominant_tag(self) -> Optional[str]:
        """Most probable tag; ties resolve to the smallest tag."""
        if not self.probs:
            return None
        return min(self.probs, key=lambda pair: (-pair[1], pair[0]))[0]


@dataclass(frozen=True)
class TagSet:
    tags: FrozenSet[str]

    def __len__(self) -> int:
        return len(self.tags)

    @classmethod
    def of(cls, tags: Iterable[str]) -> "TagSet":
        return cls(frozenset(tags))


def map_to_tags(
    window: BehaviorWindow, catalog: TagCatalog
) -> Tuple[TagSet, TagDistribution]:
    """Map a window to its observed tag set and normalized tag distribution.

    Every event weighs 1 regardless of its action.

    Raises:
        EmptyWindow: If the window has no events.

    """
    if not window.events:
        raise EmptyWindow("cannot map an empty window to tags")
    counts = Counter(catalog.tag_of(event.item_id) for event in window.events)
    distribution = TagDistribution.from_counts(counts)
    return TagSet(distribution.support), distribution
