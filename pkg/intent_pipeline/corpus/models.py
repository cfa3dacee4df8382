from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Dict, List, Mapping, Optional, Tuple

from intent_pipeline.behavior.events import BehaviorEvent
from intent_pipeline.constants import SAMPLE_SOURCES
from intent_pipeline.constants.config_types import SampleSource
from intent_pipeline.exceptions import (
    ConfigurationError,
    DataError,
    MalformedRecord,
)
from intent_pipeline.utils.files import iter_tsv

RATIO_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SearchQuery:
    """A search issued by a user, read from the mixed behavior/search log."""

    query: str
    timestamp: int


@dataclass(frozen=True)
class TrainingSample:
    """One (behavior sequence, next query) pair for fine-tuning."""

    behavior: Tuple[BehaviorEvent, ...]
    target_query: str
    source: SampleSource
    ref_time: int
    user: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.behavior:
            raise DataError("a training sample needs at least one behavior event")
        if not self.target_query.strip():
            raise DataError("target_query must be non-empty")
        if self.source not in SAMPLE_SOURCES:
            raise DataError(f"unknown sample source '{self.source}'")
        if any(event.timestamp >= self.ref_time for event in self.behavior):
            raise DataError("every behavior event must precede ref_time")

    def to_record(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "behavior": [event.to_record() for event in self.behavior],
            "target_query": self.target_query,
            "source": self.source,
            "ref_time": self.ref_time,
        }
        if self.user is not None:
            record["user"] = self.user
        return record

    @classmethod
    def from_record(
        cls, record: Mapping[str, Any], source: Optional[SampleSource] = None
    ) -> "TrainingSample":
        try:
            behavior = tuple(BehaviorEvent.from_record(e) for e in record["behavior"])
            target_query = record["target_query"]
            ref_time = record["ref_time"]
        except KeyError as e:
            raise DataError(f"missing field {e.args[0]!r}") from e
        except TypeError as e:
            raise DataError(f"malformed sample: {e}") from e
        if not isinstance(target_query, str):
            raise DataError("target_query must be a string")
        if isinstance(ref_time, bool) or not isinstance(ref_time, int):
            raise DataError("ref_time must be integer milliseconds")
        return cls(
            behavior=behavior,
            target_query=target_query,
            source=source or record.get("source", ""),
            ref_time=ref_time,
            user=record.get("user"),
        )


@dataclass(frozen=True)
class CoPurchaseMatrix:
    """Item to co-purchased items, every row sorted by descending weight."""

    rows: Mapping[str, Tuple[Tuple[str, float], ...]]

    def __post_init__(self) -> None:
        normalized: Dict[str, Tuple[Tuple[str, float], ...]] = {}
        for item, row in self.rows.items():
            for co_item, weight in row:
                if co_item == item:
                    raise DataError(f"self-pair for item '{item}'")
                if not weight > 0:
                    raise DataError(f"non-positive weight for '{item}' -> '{co_item}'")
            # stable: equal weights keep file order
            normalized[item] = tuple(sorted(row, key=lambda pair: -pair[1]))
        object.__setattr__(self, "rows", MappingProxyType(normalized))

    def row(self, item_id: str) -> Tuple[Tuple[str, float], ...]:
        return self.rows.get(item_id, ())

    @classmethod
    def from_tsv(cls, path: str) -> "CoPurchaseMatrix":
        """Read ``item \\t co_item \\t weight`` rows."""
        rows: Dict[str, List[Tuple[str, float]]] = {}
        for line_number, fields in iter_tsv(path, min_fields=3):
            item, co_item = fields[0], fields[1]
            try:
                weight = float(fields[2])
            except ValueError as e:
                raise MalformedRecord(line_number, f"bad weight {fields[2]!r}", path) from e
            if co_item == item or not weight > 0:
                raise MalformedRecord(
                    line_number, "co-purchase pairs need distinct items and weight > 0", path
                )
            rows.setdefault(item, []).append((co_item, weight))
        return cls({item: tuple(row) for item, row in rows.items()})


@dataclass(frozen=True)
class MixConfig:
    ratios: Mapping[str, float] = field(
        default_factory=lambda: {
            "behavior_driven": 0.60,
            "co_purchase": 0.20,
            "llm_rewrite": 0.15,
            "human": 0.05,
        }
    )
    total_size: int = 1_000

    def __post_init__(self) -> None:
        unknown = sorted(set(self.ratios) - set(SAMPLE_SOURCES))
        if unknown:
            raise ConfigurationError(f"unknown corpus sources: {unknown}")
        if any(ratio < 0 for ratio in self.ratios.values()):
            raise ConfigurationError("corpus ratios must be >= 0")
        total = sum(self.ratios.values())
        if abs(total - 1.0) > RATIO_TOLERANCE:
            raise ConfigurationError(f"corpus ratios must sum to 1, got {total}")
        if self.total_size < 0:
            raise ConfigurationError("corpus.total_size must be >= 0")
        object.__setattr__(
            self,
            "ratios",
            MappingProxyType(
                {source: float(self.ratios.get(source, 0.0)) for source in SAMPLE_SOURCES}
            ),
        )
