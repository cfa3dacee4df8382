"""Per-source training sample construction."""

import logging
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

from intent_pipeline.behavior.events import ActionType, BehaviorEvent
from intent_pipeline.behavior.tags import TagCatalog
from intent_pipeline.constants.prompts import UNKNOWN_TAG
from intent_pipeline.corpus.models import CoPurchaseMatrix, SearchQuery, TrainingSample
from intent_pipeline.exceptions import DataError, MalformedRecord
from intent_pipeline.generation.query import normalize_query
from intent_pipeline.generation.remote import RemoteClient
from intent_pipeline.utils.files import iter_jsonl

logger = logging.getLogger(__name__)

Rewriter = Callable[[str], str]

EventLog = Mapping[str, Sequence[BehaviorEvent]]
SearchLog = Mapping[str, Sequence[SearchQuery]]

REWRITE_PROMPT = (
    "Rewrite the following e-commerce search query so that it keeps the same "
    "intent but uses different natural wording. Answer with the query only.\n"
    "Query: {query}"
)


def load_logs(path: str) -> Tuple[Dict[str, List[BehaviorEvent]], Dict[str, List[SearchQuery]]]:
    """Split a mixed behavior/search JSONL log per user.

    Lines carrying a ``query`` field are searches (``user``, ``query``,
    ``ts``); every other line is a behavior event. Both logs are returned
    sorted by time per user, ties kept in file order.

    """
    events: Dict[str, List[BehaviorEvent]] = {}
    searches: Dict[str, List[SearchQuery]] = {}
    for line_number, record in iter_jsonl(path):
        user = record.get("user")
        if not isinstance(user, str) or not user:
            raise MalformedRecord(line_number, "missing 'user'", path)
        try:
            if "query" in record:
                query, ts = record["query"], record["ts"]
                if not isinstance(query, str) or not query.strip():
                    raise DataError("'query' must be a non-empty string")
                if isinstance(ts, bool) or not isinstance(ts, int):
                    raise DataError("'ts' must be integer milliseconds")
                searches.setdefault(user, []).append(SearchQuery(query.strip(), ts))
            else:
                events.setdefault(user, []).append(BehaviorEvent.from_record(record))
        except KeyError as e:
            raise MalformedRecord(line_number, f"missing field {e.args[0]!r}", path) from e
        except DataError as e:
            raise MalformedRecord(line_number, str(e), path) from e

    for user_events in events.values():
        user_events.sort(key=lambda event: event.timestamp)
    for user_searches in searches.values():
        user_searches.sort(key=lambda search: search.timestamp)
    logger.info(
        "Loaded %d behavior event(s) and %d search(es) for %d user(s) from %s",
        sum(map(len, events.values())),
        sum(map(len, searches.values())),
        len(set(events) | set(searches)),
        path,
    )
    return events, searches


def _purchases(events: Sequence[BehaviorEvent]) -> Iterable[Tuple[int, BehaviorEvent]]:
    return (
        (index, event)
        for index, event in enumerate(events)
        if event.action is ActionType.PURCHASE
    )


def _history(
    events: Sequence[BehaviorEvent], index: int, window_size: int
) -> Tuple[BehaviorEvent, ...]:
    return tuple(events[max(0, index + 1 - window_size) : index + 1])


def build_behavior_driven(
    behavior_log: EventLog,
    search_log: SearchLog,
    link_window_ms: int,
    window_size: int = 50,
) -> List[TrainingSample]:
    """Link each purchase to the user's first search after it.

    The search must come strictly after the purchase and at most
    ``link_window_ms`` later. The behavior input is the user's last
    ``window_size`` events up to and including the purchase.

    """
    samples: List[TrainingSample] = []
    for user in sorted(behavior_log):
        events = behavior_log[user]
        searches = search_log.get(user, ())
        for index, purchase in _purchases(events):
            target = next(
                (
                    search
                    for search in searches
                    if purchase.timestamp
                    < search.timestamp
                    <= purchase.timestamp + link_window_ms
                ),
                None,
            )
            if target is None:
                continue
            samples.append(
                TrainingSample(
                    behavior=_history(events, index, window_size),
                    target_query=target.query,
                    source="behavior_driven",
                    ref_time=target.timestamp,
                    user=user,
                )
            )
    logger.info("Built %d behavior-driven sample(s)", len(samples))
    return samples


def build_co_purchase(
    matrix: CoPurchaseMatrix,
    catalog: TagCatalog,
    seed_events: EventLog,
    top_k: int,
    window_size: int = 50,
) -> List[TrainingSample]:
    """Target the tags of the ``top_k`` items co-purchased with each purchase.

    Samples are stamped one millisecond after the seed purchase. Co-items
    without a catalog tag are skipped.

    """
    samples: List[TrainingSample] = []
    for user in sorted(seed_events):
        events = seed_events[user]
        for index, purchase in _purchases(events):
            for co_item, _ in matrix.row(purchase.item_id)[:top_k]:
                tag = catalog.tag_of(co_item)
                if tag == UNKNOWN_TAG:
                    logger.debug("Skipping co-item '%s' without a tag", co_item)
                    continue
                samples.append(
                    TrainingSample(
                        behavior=_history(events, index, window_size),
                        target_query=tag,
                        source="co_purchase",
                        ref_time=purchase.timestamp + 1,
                        user=user,
                    )
                )
    logger.info("Built %d co-purchase sample(s)", len(samples))
    return samples


def identity_rewriter(query: str) -> str:
    return query


class GeneratorRewriter:
    """Rewrites a query through the remote generation endpoint."""

    def __init__(self, client: RemoteClient, template: str = REWRITE_PROMPT) -> None:
        self.client = client
        self.template = template

    def __call__(self, query: str) -> str:
        body = self.client.post({"prompt": self.template.replace("{query}", query)})
        raw = body.get("query")
        return normalize_query(raw) if isinstance(raw, str) else ""


def augment_rewrite(
    samples: Iterable[TrainingSample], rewriter: Rewriter = identity_rewriter
) -> List[TrainingSample]:
    """Copy samples with rewritten targets and the ``llm_rewrite`` source.

    A sample is skipped, with a warning, when the rewriter raises or
    returns an empty string.

    """
    rewritten: List[TrainingSample] = []
    for sample in samples:
        try:
            query = rewriter(sample.target_query)
        except Exception as e:  # pylint: disable=broad-exception-caught
            logger.warning("Rewriter failed on %r: %s", sample.target_query, e)
            continue
        if not query or not query.strip():
            logger.warning("Rewriter returned nothing for %r", sample.target_query)
            continue
        rewritten.append(
            TrainingSample(
                behavior=sample.behavior,
                target_query=query.strip(),
                source="llm_rewrite",
                ref_time=sample.ref_time,
                user=sample.user,
            )
        )
    return rewritten


def ingest_human(path: str) -> List[TrainingSample]:
    """Read manually annotated samples; every one is tagged ``human``."""
    samples: List[TrainingSample] = []
    for line_number, record in iter_jsonl(path):
        try:
            samples.append(TrainingSample.from_record(record, source="human"))
        except DataError as e:
            raise MalformedRecord(line_number, str(e), path) from e
    logger.info("Ingested %d human sample(s) from %s", len(samples), path)
    return samples
