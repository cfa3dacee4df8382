import bisect
import logging
from typing import Dict, Iterable, List, Optional

from intent_pipeline.behavior.events import BehaviorEvent, BehaviorWindow, WindowPolicy
from intent_pipeline.exceptions import DataError, MalformedRecord, OutOfOrderEvent
from intent_pipeline.utils.files import iter_jsonl, write_jsonl

logger = logging.getLogger(__name__)

DEFAULT_OUT_OF_ORDER_TOLERANCE_MS = 5_000


class EventStore:
    """In-memory, per-user event store acting as the local behavior log.

    Events are kept sorted by timestamp; late events within
    ``out_of_order_tolerance_ms`` of the newest stored event are inserted in
    place (after existing events with the same timestamp). Events that fall
    outside ``retention`` are evicted on append.

    Attributes:
        retention (WindowPolicy): How much history the store keeps.
        out_of_order_tolerance_ms (int): How far back a late event may land.

    """

    def __init__(
        self,
        retention: Optional[WindowPolicy] = None,
        out_of_order_tolerance_ms: int = DEFAULT_OUT_OF_ORDER_TOLERANCE_MS,
    ) -> None:
        if out_of_order_tolerance_ms < 0:
            raise ValueError("out_of_order_tolerance_ms must be >= 0")
        self.retention = retention or WindowPolicy()
        self.out_of_order_tolerance_ms = out_of_order_tolerance_ms
        self._events: List[BehaviorEvent] = []
        self._timestamps: List[int] = []

    def __len__(self) -> int:
        return len(self._events)

    @property
    def events(self) -> List[BehaviorEvent]:
        return list(self._events)

    def append_event(self, event: BehaviorEvent) -> None:
        """Append an event, keeping the log sorted and evicting stale history.

        Raises:
            OutOfOrderEvent: If the event is older than the newest stored
                event minus the out-of-order tolerance.

        """
        if not isinstance(event, BehaviorEvent):
            raise DataError(f"expected a BehaviorEvent, got {type(event).__name__}")
        if self._timestamps:
            newest = self._timestamps[-1]
            if event.timestamp < newest - self.out_of_order_tolerance_ms:
                raise OutOfOrderEvent(
                    f"event at {event.timestamp} is older than newest {newest} "
                    f"minus tolerance {self.out_of_order_tolerance_ms} ms"
                )

        position = bisect.bisect_right(self._timestamps, event.timestamp)
        self._timestamps.insert(position, event.timestamp)
        self._events.insert(position, event)
        self._evict()

    def _evict(self) -> None:
        if self.retention.kind == "count":
            overflow = len(self._events) - self.retention.size
        else:
            cutoff = self._timestamps[-1] - self.retention.span_ms
            overflow = bisect.bisect_left(self._timestamps, cutoff)
        if overflow > 0:
            del self._events[:overflow]
            del self._timestamps[:overflow]

    def current_window(self, policy: Optional[WindowPolicy] = None) -> BehaviorWindow:
        """Return the most recent events under ``policy`` (default: retention).

        Count policy keeps the ``size`` newest events; time policy keeps the
        events whose timestamp is at least ``newest - span_ms``.

        """
        policy = policy or self.retention
        if not self._events:
            return BehaviorWindow(events=(), policy=policy)
        if policy.kind == "count":
            selected = self._events[-policy.size :]
        else:
            cutoff = self._timestamps[-1] - policy.span_ms
            start = bisect.bisect_left(self._timestamps, cutoff)
            selected = self._events[start:]
        return BehaviorWindow(events=tuple(selected), policy=policy)

    def extend(self, events: Iterable[BehaviorEvent]) -> None:
        for event in events:
            self.append_event(event)

    def load_jsonl(self, path: str, user: Optional[str] = None) -> int:
        """Append events from a session log, optionally keeping only ``user``.

        Returns:
            int: The number of events appended.

        """
        loaded = 0
        for line_number, record in iter_jsonl(path):
            if user is not None and record.get("user") != user:
                continue
            try:
                event = BehaviorEvent.from_record(record)
            except DataError as e:
                raise MalformedRecord(line_number, str(e), path) from e
            self.append_event(event)
            loaded += 1
        logger.debug("Loaded %s event(s) from %s", loaded, path)
        return loaded

    def dump_jsonl(self, path: str, user: str) -> int:
        return write_jsonl(path, (event.to_record(user) for event in self._events))


class UserStores:
    """Creates one independent ``EventStore`` per user on first use."""

    def __init__(
        self,
        retention: Optional[WindowPolicy] = None,
        out_of_order_tolerance_ms: int = DEFAULT_OUT_OF_ORDER_TOLERANCE_MS,
    ) -> None:
        self.retention = retention
        self.out_of_order_tolerance_ms = out_of_order_tolerance_ms
        self._stores: Dict[str, EventStore] = {}

    def __getitem__(self, user: str) -> EventStore:
        if user not in self._stores:
            self._stores[user] = EventStore(
                self.retention, self.out_of_order_tolerance_ms
            )
        return self._stores[user]

    def __contains__(self, user: object) -> bool:
        return user in self._stores

    def users(self) -> List[str]:
        return sorted(self._stores)


def append_event(store: EventStore, event: BehaviorEvent) -> None:
    store.append_event(event)


def current_window(
    store: EventStore, policy: Optional[WindowPolicy] = None
) -> BehaviorWindow:
    return store.current_window(policy)
