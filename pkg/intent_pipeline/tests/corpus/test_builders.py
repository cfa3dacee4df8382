import logging
import sys
from typing import Callable
from unittest.mock import MagicMock

import pytest

from intent_pipeline.behavior.events import ActionType
from intent_pipeline.behavior.tags import TagCatalog
from intent_pipeline.corpus.builders import (
    GeneratorRewriter,
    augment_rewrite,
    build_behavior_driven,
    build_co_purchase,
    ingest_human,
    load_logs,
)
from intent_pipeline.corpus.models import CoPurchaseMatrix, SearchQuery
from intent_pipeline.exceptions import MalformedRecord
from intent_pipeline.generation.remote import RemoteClient
from intent_pipeline.tests.constants import BASE_TS, PYTHON_VERSION, PYTHON_VERSION_REASON
from intent_pipeline.tests.fixtures.catalog_fixture import EventFactory
from intent_pipeline.tests.fixtures.corpus_fixture import SampleFactory
from intent_pipeline.tests.fixtures.files_fixture import JsonlWriter

pytestmark = [
    pytest.mark.corpus,
    pytest.mark.corpus_builders,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]

ResponseFactory = Callable[[object], MagicMock]


class TestLoadLogs:
    """
    Test suite for splitting a mixed behavior and search log.
    """

    def test_split_and_sort_per_user(self, write_jsonl_file: JsonlWriter) -> None:
        """
        Test reading events and searches.

        Asserts:
        -------
            - Lines with a query are searches; others are events.
            - Both logs are sorted by time per user.
        """
        path = write_jsonl_file(
            "log.jsonl",
            [
                {"user": "u1", "item": "shoe-02", "action": "purchase", "ts": BASE_TS + 5},
                {"user": "u1", "item": "shoe-01", "action": "click", "ts": BASE_TS},
                {"user": "u1", "query": " running socks ", "ts": BASE_TS + 9},
                {"user": "u2", "query": "phone case", "ts": BASE_TS},
            ],
        )
        events, searches = load_logs(path)
        assert [e.item_id for e in events["u1"]] == ["shoe-01", "shoe-02"]
        assert searches["u1"] == [SearchQuery("running socks", BASE_TS + 9)]
        assert "u2" not in events
        assert searches["u2"][0].query == "phone case"

    @pytest.mark.parametrize(
        "bad_record",
        [
            {"item": "shoe-01", "action": "click", "ts": 1},
            {"user": "u1", "query": "socks", "ts": "late"},
            {"user": "u1", "query": "", "ts": 1},
            {"user": "u1", "item": "shoe-01", "ts": 1},
        ],
    )
    def test_bad_lines_carry_line_numbers(
        self, write_jsonl_file: JsonlWriter, bad_record: dict
    ) -> None:
        """
        Test malformed log lines.

        Asserts:
        -------
            - A missing user, a bad timestamp, a blank query or a missing
              action raises `MalformedRecord` on the right line.
        """
        path = write_jsonl_file(
            "log.jsonl",
            [{"user": "u1", "item": "shoe-01", "action": "click", "ts": 0}, bad_record],
        )
        with pytest.raises(MalformedRecord) as exc_info:
            load_logs(path)
        assert exc_info.value.line_number == 2


class TestBehaviorDriven:
    """
    Test suite for linking purchases to the searches that follow them.
    """

    def test_first_search_within_link_window(self, make_events: EventFactory) -> None:
        """
        Test the purchase to search link.

        Asserts:
        -------
            - A search at the purchase time itself is not linked.
            - The first later search within the window becomes the target.
            - A purchase without a search in its window yields no sample.
        """
        events = make_events(
            ["shoe-01", "shoe-02", "book-01"],
            ["click", "purchase", "purchase"],
            step=10_000,
        )
        searches = [
            SearchQuery("shoe polish", BASE_TS + 10_000),
            SearchQuery("running socks", BASE_TS + 12_000),
            SearchQuery("bookmark", BASE_TS + 60_000),
        ]
        samples = build_behavior_driven(
            {"u1": events}, {"u1": searches}, link_window_ms=30_000
        )

        assert len(samples) == 1
        sample = samples[0]
        assert sample.target_query == "running socks"
        assert sample.ref_time == BASE_TS + 12_000
        assert [e.item_id for e in sample.behavior] == ["shoe-01", "shoe-02"]
        assert sample.source == "behavior_driven"
        assert sample.user == "u1"

    def test_window_size_limits_history(self, make_events: EventFactory) -> None:
        """
        Test the behavior history length.

        Asserts:
        -------
            - Only the last `window_size` events up to the purchase are kept.
        """
        events = make_events(["shoe-01", "shoe-02"], ["click", "purchase"])
        samples = build_behavior_driven(
            {"u1": events},
            {"u1": [SearchQuery("socks", BASE_TS + 5_000)]},
            link_window_ms=10_000,
            window_size=1,
        )
        assert [e.action for e in samples[0].behavior] == [ActionType.PURCHASE]


class TestCoPurchase:
    """
    Test suite for co-purchase sample construction.
    """

    def test_top_k_tags_with_unknown_items_skipped(
        self, tag_catalog: TagCatalog, make_events: EventFactory
    ) -> None:
        """
        Test the co-purchase targets.

        Asserts:
        -------
            - The top `k` co-items by weight are considered.
            - Co-items without a tag are skipped.
            - Samples are stamped one millisecond after the purchase.
        """
        matrix = CoPurchaseMatrix(
            {"shoe-01": (("phone-01", 3.0), ("lamp-99", 5.0), ("book-01", 1.0))}
        )
        events = make_events(["shoe-01"], ["purchase"])

        samples = build_co_purchase(matrix, tag_catalog, {"u1": events}, top_k=2)
        assert [s.target_query for s in samples] == ["phones"]
        assert samples[0].ref_time == BASE_TS + 1
        assert samples[0].source == "co_purchase"

        wider = build_co_purchase(matrix, tag_catalog, {"u1": events}, top_k=3)
        assert [s.target_query for s in wider] == ["phones", "books"]

    def test_non_purchases_are_ignored(
        self, tag_catalog: TagCatalog, make_events: EventFactory
    ) -> None:
        """
        Test that only purchases seed samples.

        Asserts:
        -------
            - Clicks on an item with co-purchases produce nothing.
        """
        matrix = CoPurchaseMatrix({"shoe-01": (("phone-01", 1.0),)})
        events = make_events(["shoe-01", "shoe-01"], ["click", "cart"])
        assert build_co_purchase(matrix, tag_catalog, {"u1": events}, top_k=1) == []


class TestRewriteAndHuman:
    """
    Test suite for rewrite augmentation and human sample ingestion.
    """

    def test_augment_rewrite_relabels_and_skips_failures(
        self, make_sample: SampleFactory, caplog: pytest.LogCaptureFixture
    ) -> None:
        """
        Test the rewrite source.

        Asserts:
        -------
            - Rewritten samples keep behavior and ref time under `llm_rewrite`.
            - Samples whose rewrite raises or comes back empty are skipped with
              a warning.
        """
        caplog.set_level(logging.DEBUG, logger="intent_pipeline")

        def rewriter(query: str) -> str:
            if query == "boom":
                raise RuntimeError("backend down")
            return "" if query == "blank" else query.upper()

        samples = [make_sample("socks"), make_sample("boom"), make_sample("blank")]
        rewritten = augment_rewrite(samples, rewriter)

        assert [s.target_query for s in rewritten] == ["SOCKS"]
        assert rewritten[0].source == "llm_rewrite"
        assert rewritten[0].behavior == samples[0].behavior
        assert "Rewriter failed" in caplog.text
        assert "Rewriter returned nothing" in caplog.text

    def test_generator_rewriter_uses_remote_client(
        self,
        remote_client: RemoteClient,
        mock_http_session: MagicMock,
        make_json_response: ResponseFactory,
    ) -> None:
        """
        Test the remote rewriter.

        Asserts:
        -------
            - The query is embedded in the rewrite prompt.
            - The returned query is normalized to one line.
        """
        mock_http_session.post.return_value = make_json_response(
            {"query": "athletic   socks\nmore"}
        )
        assert GeneratorRewriter(remote_client)("running socks") == "athletic socks"
        sent = mock_http_session.post.call_args.kwargs["json"]["prompt"]
        assert "Query: running socks" in sent

    def test_ingest_human_forces_source(
        self, make_sample: SampleFactory, write_jsonl_file: JsonlWriter
    ) -> None:
        """
        Test reading annotated samples.

        Asserts:
        -------
            - Every sample is labelled `human` whatever the file says.
            - A bad record raises `MalformedRecord` with its line.
        """
        record = make_sample("socks").to_record()
        path = write_jsonl_file("human.jsonl", [record])
        samples = ingest_human(path)
        assert [s.source for s in samples] == ["human"]

        bad = write_jsonl_file("bad.jsonl", [record, {"target_query": "x"}])
        with pytest.raises(MalformedRecord) as exc_info:
            ingest_human(bad)
        assert exc_info.value.line_number == 2
