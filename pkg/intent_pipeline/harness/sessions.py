import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from intent_pipeline.behavior.events import ActionType, BehaviorEvent
from intent_pipeline.behavior.tags import TagCatalog, TagDistribution
from intent_pipeline.exceptions import ConfigurationError, DataError, MalformedRecord
from intent_pipeline.utils.files import iter_jsonl, write_jsonl

logger = logging.getLogger(__name__)

Sessions = Dict[str, List[BehaviorEvent]]
GroundTruth = Dict[str, List[int]]


def load_sessions(path: str) -> Sessions:
    """Group a session log by user; each session is time-sorted (stable)."""
    sessions: Sessions = {}
    for line_number, record in iter_jsonl(path):
        user = record.get("user")
        if not isinstance(user, str) or not user:
            raise MalformedRecord(line_number, "missing 'user'", path)
        try:
            event = BehaviorEvent.from_record(record)
        except DataError as e:
            raise MalformedRecord(line_number, str(e), path) from e
        sessions.setdefault(user, []).append(event)

    for events in sessions.values():
        events.sort(key=lambda event: event.timestamp)
    logger.info("Loaded %d session(s) from %s", len(sessions), path)
    return dict(sorted(sessions.items()))


def dump_sessions(path: str, sessions: Mapping[str, Sequence[BehaviorEvent]]) -> int:
    return write_jsonl(
        path,
        (
            event.to_record(user)
            for user in sorted(sessions)
            for event in sessions[user]
        ),
    )


@dataclass(frozen=True)
class SegmentSpec:
    distribution: TagDistribution
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ConfigurationError("segment length must be >= 1")


@dataclass(frozen=True)
class SyntheticStreamSpec:
    """Piecewise-stationary behavior stream with known shift points.

    Each segment draws its tags i.i.d. from its distribution, then an item
    of that tag and an action from ``action_weights``.

    """

    segments: Tuple[SegmentSpec, ...]
    gap_ms: int = 1_000
    seed: int = 0
    start_ms: int = 1_700_000_000_000
    users: int = 1
    items_per_tag: int = 5
    action_weights: Mapping[str, float] = field(
        default_factory=lambda: {
            "click": 0.6,
            "cart": 0.2,
            "favorite": 0.1,
            "purchase": 0.1,
        }
    )

    def __post_init__(self) -> None:
        if not self.segments:
            raise ConfigurationError("a synthetic stream needs at least one segment")
        if self.gap_ms < 0 or self.start_ms < 0:
            raise ConfigurationError("gap_ms and start_ms must be >= 0")
        if self.users < 1 or self.items_per_tag < 1:
            raise ConfigurationError("users and items_per_tag must be >= 1")
        unknown = sorted(set(self.action_weights) - {a.value for a in ActionType})
        if unknown:
            raise ConfigurationError(f"unknown actions in action_weights: {unknown}")
        weights = list(self.action_weights.values())
        if any(w < 0 for w in weights) or not sum(weights) > 0:
            raise ConfigurationError("action_weights must be >= 0 with a positive sum")

    @property
    def event_count(self) -> int:
        return sum(segment.length for segment in self.segments)

    @property
    def tags(self) -> List[str]:
        return sorted({tag for s in self.segments for tag in s.distribution.support})

    def shift_indices(self) -> List[int]:
        """Index of the first event of every segment after the first."""
        boundaries = np.cumsum([segment.length for segment in self.segments])
        return [int(b) for b in boundaries[:-1]]

    def user_ids(self) -> List[str]:
        return [f"user-{index:03d}" for index in range(self.users)]

    def with_seed(self, seed: int) -> "SyntheticStreamSpec":
        return SyntheticStreamSpec(
            segments=self.segments,
            gap_ms=self.gap_ms,
            seed=seed,
            start_ms=self.start_ms,
            users=self.users,
            items_per_tag=self.items_per_tag,
            action_weights=self.action_weights,
        )

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SyntheticStreamSpec":
        try:
            segments = tuple(
                SegmentSpec(
                    TagDistribution.from_mapping(segment["distribution"]),
                    int(segment["length"]),
                )
                for segment in data["segments"]
            )
        except (KeyError, TypeError) as e:
            raise ConfigurationError(f"invalid synthetic stream segment: {e}") from e
        except DataError as e:
            raise ConfigurationError(f"invalid segment distribution: {e}") from e
        options = {
            key: data[key]
            for key in ("gap_ms", "seed", "start_ms", "users", "items_per_tag", "action_weights")
            if key in data
        }
        return cls(segments=segments, **options)

    @classmethod
    def from_file(cls, path: str) -> "SyntheticStreamSpec":
        if not os.path.isfile(path):
            raise ConfigurationError(f"Stream spec {path} does not exist.")
        with open(path, encoding="utf-8") as infile:
            try:
                data = json.load(infile)
            except (json.JSONDecodeError, UnicodeDecodeError) as e:
                raise ConfigurationError(f"Stream spec {path} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ConfigurationError(f"Stream spec {path} must hold a JSON object.")
        return cls.from_dict(data)


def synthetic_catalog(spec: SyntheticStreamSpec) -> TagCatalog:
    """``items_per_tag`` items per tag, named ``<tag>-<nn>``."""
    return TagCatalog(
        {
            f"{tag}-{index:02d}": tag
            for tag in spec.tags
            for index in range(spec.items_per_tag)
        }
    )


def synth_sessions(
    spec: SyntheticStreamSpec, catalog: TagCatalog, user_index: int = 0
) -> Tuple[List[BehaviorEvent], List[int]]:
    """Draw one user's stream and its ground-truth shift indices."""
    rng = np.random.default_rng([spec.seed, user_index])
    actions = [ActionType.parse(name) for name in spec.action_weights]
    action_probs = np.asarray(list(spec.action_weights.values()), dtype=np.float64)
    action_probs /= action_probs.sum()

    events: List[BehaviorEvent] = []
    for segment in spec.segments:
        tags = [tag for tag, _ in segment.distribution.probs]
        probs = np.asarray([p for _, p in segment.distribution.probs], dtype=np.float64)
        probs /= probs.sum()
        tag_draws = rng.choice(len(tags), size=segment.length, p=probs)
        action_draws = rng.choice(len(actions), size=segment.length, p=action_probs)
        item_draws = rng.random(segment.length)
        items_by_tag = {tag: catalog.items_with_tag(tag) for tag in tags}
        for tag_index, action_index, item_draw in zip(tag_draws, action_draws, item_draws):
            items = items_by_tag[tags[tag_index]]
            if not items:
                raise ConfigurationError(f"catalog has no item for tag '{tags[tag_index]}'")
            events.append(
                BehaviorEvent(
                    item_id=items[int(item_draw * len(items))],
                    action=actions[action_index],
                    timestamp=spec.start_ms + len(events) * spec.gap_ms,
                )
            )
    return events, spec.shift_indices()


def synth_dataset(
    spec: SyntheticStreamSpec,
) -> Tuple[Sessions, GroundTruth, TagCatalog]:
    catalog = synthetic_catalog(spec)
    sessions: Sessions = {}
    truth: GroundTruth = {}
    for index, user in enumerate(spec.user_ids()):
        sessions[user], truth[user] = synth_sessions(spec, catalog, index)
    logger.info(
        "Synthesized %d session(s) of %d event(s) with %d shift(s) each",
        len(sessions),
        spec.event_count,
        len(spec.shift_indices()),
    )
    return sessions, truth, catalog


def load_ground_truth(path: str) -> GroundTruth:
    """Read ``{"user": [shift indices]}``."""
    with open(path, encoding="utf-8") as infile:
        try:
            data = json.load(infile)
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise DataError(f"ground truth {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict) or not all(
        isinstance(shifts, list) and all(isinstance(i, int) for i in shifts)
        for shifts in data.values()
    ):
        raise DataError(f"ground truth {path} must map users to index lists")
    return {user: sorted(shifts) for user, shifts in data.items()}


def dump_ground_truth(path: str, truth: GroundTruth) -> None:
    with open(path, "w", encoding="utf-8") as outfile:
        json.dump(dict(sorted(truth.items())), outfile, sort_keys=True)
        outfile.write("\n")
