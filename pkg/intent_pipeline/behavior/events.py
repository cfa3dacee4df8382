from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from intent_pipeline.constants.config_types import WindowPolicyKind
from intent_pipeline.exceptions import ConfigurationError, DataError
from intent_pipeline.utils.time import MAX_TIMESTAMP_MS


class ActionType(str, Enum):
    CLICK = "click"
    CART = "cart"
    FAVORITE = "favorite"
    PURCHASE = "purchase"

    @classmethod
    def parse(cls, value: str) -> "ActionType":
        try:
            return cls(value)
        except ValueError as e:
            raise DataError(f"unknown action '{value}'") from e


# Order of the act_dist feature components.
ACTION_ORDER: Tuple[ActionType, ...] = tuple(ActionType)


@dataclass(frozen=True)
class BehaviorEvent:
    """One ``(item, action, time)`` interaction; ``timestamp`` is epoch ms."""

    item_id: str
    action: ActionType
    timestamp: int

    def __post_init__(self) -> None:
        if not isinstance(self.item_id, str) or not self.item_id:
            raise DataError("item_id must be a non-empty string")
        if not isinstance(self.action, ActionType):
            raise DataError(f"action must be an ActionType, got {self.action!r}")
        if isinstance(self.timestamp, bool) or not isinstance(self.timestamp, int):
            raise DataError("timestamp must be integer milliseconds")
        if not 0 <= self.timestamp <= MAX_TIMESTAMP_MS:
            raise DataError(f"timestamp must lie in [0, {MAX_TIMESTAMP_MS}]")

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "BehaviorEvent":
        """Build an event from a session-log object (``item``/``action``/``ts``)."""
        try:
            item, action, ts = record["item"], record["action"], record["ts"]
        except KeyError as e:
            raise DataError(f"missing field {e.args[0]!r}") from e
        return cls(item_id=item, action=ActionType.parse(action), timestamp=ts)

    def to_record(self, user: Optional[str] = None) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "item": self.item_id,
            "action": self.action.value,
            "ts": self.timestamp,
        }
        if user is not None:
            record = {"user": user, **record}
        return record


@dataclass(frozen=True)
class WindowPolicy:
    """Count-based (last ``size`` events) or time-based (``span_ms``) window."""

    kind: WindowPolicyKind = "count"
    size: int = 50
    span_ms: int = 600_000

    def __post_init__(self) -> None:
        if self.kind not in ("count", "time"):
            raise ConfigurationError(f"unknown window policy '{self.kind}'")
        if self.kind == "count" and self.size < 1:
            raise ConfigurationError("count window size must be >= 1")
        if self.kind == "time" and self.span_ms < 0:
            raise ConfigurationError("time window span must be >= 0")

    @classmethod
    def count(cls, size: int) -> "WindowPolicy":
        return cls(kind="count", size=size)

    @classmethod
    def time(cls, span_ms: int) -> "WindowPolicy":
        return cls(kind="time", span_ms=span_ms)


@dataclass(frozen=True)
class BehaviorWindow:
    """An immutable, time-sorted snapshot of recent events."""

    events: Tuple[BehaviorEvent, ...]
    policy: WindowPolicy

    def __post_init__(self) -> None:
        timestamps = [event.timestamp for event in self.events]
        if any(a > b for a, b in zip(timestamps, timestamps[1:])):
            raise DataError("window events must be sorted by timestamp")
        if self.policy.kind == "count" and len(self.events) > self.policy.size:
            raise DataError("window exceeds its count policy")
        if (
            self.policy.kind == "time"
            and timestamps
            and timestamps[-1] - timestamps[0] > self.policy.span_ms
        ):
            raise DataError("window exceeds its time span")

    def __len__(self) -> int:
        return len(self.events)

    @property
    def newest_timestamp(self) -> Optional[int]:
        return self.events[-1].timestamp if self.events else None

    @property
    def oldest_timestamp(self) -> Optional[int]:
        return self.events[0].timestamp if self.events else None
