from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Literal, Optional

from intent_pipeline.constants.config_types import GeneratorKind
from intent_pipeline.exceptions import ConfigurationError, DataError
from intent_pipeline.prompting.tokenizer import count_tokens, truncate_tokens

MAX_QUERY_TOKENS = 64

QuerySource = Literal["mock", "remote"]


def normalize_query(raw: str) -> str:
    """Reduce raw backend output to a single query line.

    The first non-blank line is kept, inner whitespace is collapsed and the
    result is cut to ``MAX_QUERY_TOKENS`` tokens.

    """
    for line in raw.splitlines():
        line = " ".join(line.split())
        if line:
            return truncate_tokens(line, MAX_QUERY_TOKENS)
    return ""


@dataclass(frozen=True)
class GeneratedQuery:
    text: str
    latency_ms: float
    source: QuerySource

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise DataError("generated query must be non-empty")
        if "\n" in self.text or "\r" in self.text:
            raise DataError("generated query must be a single line")
        if count_tokens(self.text) > MAX_QUERY_TOKENS:
            raise DataError(f"generated query exceeds {MAX_QUERY_TOKENS} tokens")
        if self.latency_ms < 0:
            raise DataError("latency_ms must be >= 0")


@dataclass(frozen=True)
class GeneratorConfig:
    """Generator backend selection.

    ``endpoint`` is required for the remote kind and meaningless for the
    mock; ``complement_table`` is the mock's tag to query TSV.

    """

    kind: GeneratorKind = "mock"
    endpoint: Optional[str] = None
    timeout_ms: int = 2_000
    max_retries: int = 1
    max_in_flight: int = 4
    complement_table: Optional[str] = None
    mock_latency_per_token_ms: float = 5.0

    def __post_init__(self) -> None:
        if self.kind not in ("mock", "remote"):
            raise ConfigurationError(f"unknown generator kind '{self.kind}'")
        if self.kind == "remote" and not self.endpoint:
            raise ConfigurationError("generator.endpoint is required for kind 'remote'")
        if self.kind == "mock" and self.endpoint:
            raise ConfigurationError("generator.endpoint is only valid for kind 'remote'")
        if self.timeout_ms <= 0:
            raise ConfigurationError("generator.timeout_ms must be > 0")
        if self.max_retries < 0:
            raise ConfigurationError("generator.max_retries must be >= 0")
        if self.max_in_flight < 1:
            raise ConfigurationError("generator.max_in_flight must be >= 1")
        if self.mock_latency_per_token_ms < 0:
            raise ConfigurationError("generator.mock_latency_per_token_ms must be >= 0")


class QueryGenerator(ABC):
    """Turns an instantiated prompt into the predicted next search query.

    Implementations must be safe for concurrent calls.

    """

    source: QuerySource

    @abstractmethod
    def generate(self, prompt_text: str) -> GeneratedQuery:
        """Generate one query.

        Raises:
            GenerationFailed: When the backend gives up after its retries.

        """


def generate(generator: QueryGenerator, prompt_text: str) -> GeneratedQuery:
    if not prompt_text.strip():
        raise DataError("prompt_text must be non-empty")
    return generator.generate(prompt_text)

