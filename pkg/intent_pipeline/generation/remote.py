import logging
import threading
import time
from typing import Any, Callable, Dict, List, Mapping, Optional

import requests

from intent_pipeline.exceptions import GenerationFailed
from intent_pipeline.generation.query import (
    GeneratedQuery,
    QueryGenerator,
    normalize_query,
)

logger = logging.getLogger(__name__)


class RemoteClient:
    """JSON-over-HTTP POST client shared by the generator, judge and rewriter.

    At most ``max_in_flight`` requests run at once and failed attempts are
    retried ``max_retries`` times. One call, including the wait for a free
    slot, never blocks longer than ``max_blocking_s`` plus connection setup.
    Each thread gets its own ``requests.Session`` from ``session_factory``.

    """

    def __init__(
        self,
        endpoint: str,
        timeout_ms: int = 2_000,
        max_retries: int = 1,
        max_in_flight: int = 4,
        session_factory: Callable[[], requests.Session] = requests.Session,
    ) -> None:
        self.endpoint = endpoint
        self.timeout_ms = timeout_ms
        self.max_retries = max_retries
        self._session_factory = session_factory
        self._local = threading.local()
        self._sessions: List[requests.Session] = []
        self._sessions_lock = threading.Lock()
        self._in_flight = threading.BoundedSemaphore(max_in_flight)

    @property
    def max_blocking_s(self) -> float:
        return self.timeout_ms * (self.max_retries + 1) / 1000

    @property
    def session(self) -> requests.Session:
        """The calling thread's session, created on first use."""
        session = getattr(self._local, "session", None)
        if session is None:
            session = self._session_factory()
            self._local.session = session
            with self._sessions_lock:
                self._sessions.append(session)
        return session

    def post(self, payload: Mapping[str, Any]) -> Dict[str, Any]:
        deadline = time.monotonic() + self.max_blocking_s
        if not self._in_flight.acquire(timeout=self.max_blocking_s):
            raise GenerationFailed(
                f"{self.endpoint}: no free request slot within {self.max_blocking_s}s"
            )
        last_error: Optional[Exception] = None
        attempts = self.max_retries + 1
        try:
            for attempt in range(1, attempts + 1):
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    break
                try:
                    response = self.session.post(
                        self.endpoint,
                        json=dict(payload),
                        timeout=min(self.timeout_ms / 1000, remaining),
                    )
                    response.raise_for_status()
                    body = response.json()
                except (requests.RequestException, ValueError) as e:
                    last_error = e
                    logger.warning(
                        "POST %s failed on attempt %d/%d: %s",
                        self.endpoint,
                        attempt,
                        attempts,
                        e,
                    )
                    continue
                if not isinstance(body, dict):
                    last_error = ValueError("response body is not a JSON object")
                    continue
                return body
        finally:
            self._in_flight.release()
        raise GenerationFailed(
            f"{self.endpoint} failed after {attempts} attempt(s): {last_error}"
        )

    def close(self) -> None:
        with self._sessions_lock:
            sessions, self._sessions = self._sessions, []
            self._local = threading.local()
        for session in sessions:
            session.close()


class RemoteGenerator(QueryGenerator):
    """Sends ``{"prompt": ...}`` and reads ``{"query": ...}`` back."""

    source = "remote"

    def __init__(self, client: RemoteClient) -> None:
        self.client = client

    def generate(self, prompt_text: str) -> GeneratedQuery:
        start = time.perf_counter()
        body = self.client.post({"prompt": prompt_text})
        latency_ms = (time.perf_counter() - start) * 1000
        raw = body.get("query")
        text = normalize_query(raw) if isinstance(raw, str) else ""
        if not text:
            raise GenerationFailed(
                f"{self.client.endpoint} returned no usable 'query' field"
            )
        return GeneratedQuery(text=text, latency_ms=latency_ms, source="remote")
