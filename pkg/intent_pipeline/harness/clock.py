"""Stage timing for replays.

The simulated clock charges the latencies produced by the cost models, so
replays are reproducible; the wall clock measures real elapsed time.
"""

import time
from abc import ABC, abstractmethod
from contextlib import contextmanager
from typing import Dict, Generator

from intent_pipeline.constants.config_types import ClockKind
from intent_pipeline.exceptions import ConfigurationError


class StageTimer:
    """Handle yielded by ``Clock.stage``; ``charge`` adds simulated cost."""

    def __init__(self) -> None:
        self.charged_ms = 0.0

    def charge(self, latency_ms: float) -> None:
        self.charged_ms += latency_ms


class Clock(ABC):
    name: ClockKind

    @contextmanager
    def stage(
        self, timings: Dict[str, float], name: str
    ) -> Generator[StageTimer, None, None]:
        """Time the ``with`` block and add it to ``timings[name]``."""
        timer = StageTimer()
        start = time.perf_counter()
        try:
            yield timer
        finally:
            elapsed_ms = (time.perf_counter() - start) * 1000
            timings[name] = timings.get(name, 0.0) + self._elapsed(timer, elapsed_ms)

    @abstractmethod
    def _elapsed(self, timer: StageTimer, wall_ms: float) -> float:
        """The latency to record for a finished stage."""


class SimulatedClock(Clock):
    name = "simulated"

    def _elapsed(self, timer: StageTimer, wall_ms: float) -> float:
        return timer.charged_ms


class WallClock(Clock):
    name = "wall"

    def _elapsed(self, timer: StageTimer, wall_ms: float) -> float:
        return wall_ms


def build_clock(kind: ClockKind) -> Clock:
    if kind == "simulated":
        return SimulatedClock()
    if kind == "wall":
        return WallClock()
    raise ConfigurationError(f"unknown clock {kind!r}")
