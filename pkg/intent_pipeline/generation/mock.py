import logging
import re
from collections import Counter
from types import MappingProxyType
from typing import List, Mapping, Optional

from intent_pipeline.behavior.tags import TagCatalog
from intent_pipeline.constants.prompts import UNKNOWN_TAG
from intent_pipeline.generation.query import (
    GeneratedQuery,
    QueryGenerator,
    normalize_query,
)
from intent_pipeline.prompting.tokenizer import count_tokens
from intent_pipeline.utils.files import iter_tsv

logger = logging.getLogger(__name__)

# ", click, 2024-05-01T12:00:00.000Z)" closing each behavior triple in a prompt
TRIPLE_TAIL_PATTERN = re.compile(
    r", (?:click|cart|favorite|purchase), \d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}\.\d{3}Z\)"
)


def load_complement_table(path: str) -> Mapping[str, str]:
    """Read a ``tag \\t query`` TSV; a repeated tag keeps its last query."""
    table = {fields[0]: fields[1] for _, fields in iter_tsv(path, min_fields=2)}
    logger.info("Loaded %d complement entries from %s", len(table), path)
    return MappingProxyType(table)


def extract_item_ids(
    prompt_text: str, catalog: Optional[TagCatalog] = None
) -> List[str]:
    """Recover the item ids of the behavior triples, in prompt order.

    An id runs from an opening parenthesis up to the action and time that
    close its triple, so it may hold commas and parentheses itself. Of the
    openings before a triple, the leftmost one giving a ``catalog`` item
    wins; without such an item the closest opening is used.

    """
    item_ids = []
    start = 0
    for tail in TRIPLE_TAIL_PATTERN.finditer(prompt_text):
        segment = prompt_text[start : tail.start()]
        start = tail.end()
        candidates = [segment[i + 1 :] for i, char in enumerate(segment) if char == "("]
        known = [c for c in candidates if catalog is not None and c in catalog]
        item_id = known[0] if known else (candidates[-1] if candidates else "")
        if item_id:
            item_ids.append(item_id)
    return item_ids


class MockGenerator(QueryGenerator):
    """Deterministic stand-in for the intent agent.

    The behavior triples embedded in the prompt are mapped to tags through
    the catalog. The most frequent known tag (ties to the smallest tag) is
    looked up in the complement table, and the tag itself is the query
    when no entry exists. Latency is simulated from the query length.

    """

    source = "mock"

    def __init__(
        self,
        catalog: TagCatalog,
        complement_table: Optional[Mapping[str, str]] = None,
        latency_per_token_ms: float = 5.0,
    ) -> None:
        self.catalog = catalog
        self.complement_table = MappingProxyType(dict(complement_table or {}))
        self.latency_per_token_ms = latency_per_token_ms

    def dominant_tag(self, prompt_text: str) -> str:
        counts = Counter(
            tag
            for tag in map(self.catalog.tag_of, extract_item_ids(prompt_text, self.catalog))
            if tag != UNKNOWN_TAG
        )
        if not counts:
            return UNKNOWN_TAG
        return min(counts, key=lambda tag: (-counts[tag], tag))

    def generate(self, prompt_text: str) -> GeneratedQuery:
        tag = self.dominant_tag(prompt_text)
        text = normalize_query(self.complement_table.get(tag, tag)) or tag
        return GeneratedQuery(
            text=text,
            latency_ms=count_tokens(text) * self.latency_per_token_ms,
            source="mock",
        )
