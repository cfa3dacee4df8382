import sys

import pytest

from intent_pipeline.behavior.tags import TagCatalog
from intent_pipeline.generation.factory import build_generator
from intent_pipeline.generation.mock import (
    MockGenerator,
    extract_item_ids,
    load_complement_table,
)
from intent_pipeline.generation.query import GeneratorConfig, generate
from intent_pipeline.prompting.engine import render_behavior_sequence
from intent_pipeline.tests.constants import PYTHON_VERSION, PYTHON_VERSION_REASON
from intent_pipeline.tests.fixtures.catalog_fixture import EventFactory
from intent_pipeline.tests.fixtures.files_fixture import TextWriter

pytestmark = [
    pytest.mark.generation,
    pytest.mark.generation_mock,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]


def prompt_for(make_events: EventFactory, items: list) -> str:
    return f"Behavior B = [{render_behavior_sequence(make_events(items))}]"


class TestExtractItemIds:
    """
    Test suite for reading behavior triples back from a prompt.
    """

    def test_rendered_sequence_round_trips(self, make_events: EventFactory) -> None:
        """
        Test that the items of a rendered sequence are recovered.

        Asserts:
        -------
            - Item ids come back in prompt order; free text is ignored.
        """
        text = prompt_for(make_events, ["shoe-01", "book-02"]) + " (not, a triple)"
        assert extract_item_ids(text) == ["shoe-01", "book-02"]

    def test_ids_with_commas_and_parentheses(self, make_events: EventFactory) -> None:
        """
        Test catalog ids holding the characters of the triple syntax.

        Asserts:
        -------
            - Every id is recovered exactly, in prompt order.
            - The mock counts their tags instead of dropping the events.
        """
        catalog = TagCatalog(
            {
                "socks, wool (2-pack)": "socks",
                "case(a": "cases",
                "a": "cases",
                "b)x": "cables",
                "b)x, click, y": "cables",
            }
        )
        socks = "socks, wool (2-pack)"
        items = ["case(a", socks, "b)x", socks, "a", socks]
        text = prompt_for(make_events, items)

        assert extract_item_ids(text, catalog) == items
        assert MockGenerator(catalog).generate(text).text == "socks"


class TestMockGenerator:
    """
    Test suite for the deterministic `MockGenerator`.
    """

    def test_dominant_tag_uses_complement_table(
        self, tag_catalog: TagCatalog, make_events: EventFactory
    ) -> None:
        """
        Test the complement lookup.

        Asserts:
        -------
            - The most frequent tag is looked up in the complement table.
            - Latency is the token count times the per-token latency.
        """
        generator = MockGenerator(tag_catalog, {"shoes": "running socks"}, 2.5)
        query = generate(
            generator, prompt_for(make_events, ["shoe-01", "phone-01", "shoe-02"])
        )
        assert query.text == "running socks"
        assert query.latency_ms == 5.0
        assert query.source == "mock"

    def test_tag_is_the_fallback_query(
        self, tag_catalog: TagCatalog, make_events: EventFactory
    ) -> None:
        """
        Test tags without a complement entry and ties.

        Asserts:
        -------
            - The tag itself is the query when the table has no entry.
            - Equal counts resolve to the smallest tag.
        """
        generator = MockGenerator(tag_catalog)
        query = generator.generate(prompt_for(make_events, ["phone-01", "book-01"]))
        assert query.text == "books"

    def test_unknown_items_only(
        self, tag_catalog: TagCatalog, make_events: EventFactory
    ) -> None:
        """
        Test a prompt whose items are all outside the catalog.

        Asserts:
        -------
            - The reserved unknown tag is the query.
        """
        query = MockGenerator(tag_catalog).generate(
            prompt_for(make_events, ["lamp-01"])
        )
        assert query.text == "unknown"

    def test_same_prompt_same_query(
        self, tag_catalog: TagCatalog, make_events: EventFactory
    ) -> None:
        """
        Test determinism.

        Asserts:
        -------
            - Two calls with the same prompt give equal results.
        """
        generator = MockGenerator(tag_catalog, {"books": "reading lamp"})
        text = prompt_for(make_events, ["book-01", "book-02"])
        assert generator.generate(text) == generator.generate(text)


class TestGeneratorFactory:
    """
    Test suite for building generators from config.
    """

    def test_mock_with_complement_file(
        self,
        tag_catalog: TagCatalog,
        make_events: EventFactory,
        write_text_file: TextWriter,
    ) -> None:
        """
        Test building the mock from a complement TSV.

        Asserts:
        -------
            - A repeated tag keeps its last query.
            - The factory passes the table and latency to the mock.
        """
        path = write_text_file(
            "complements.tsv", "phones\tphone case\nphones\tscreen protector\n"
        )
        assert load_complement_table(path) == {"phones": "screen protector"}

        generator = build_generator(
            GeneratorConfig(complement_table=path, mock_latency_per_token_ms=1.0),
            tag_catalog,
        )
        assert isinstance(generator, MockGenerator)
        query = generator.generate(prompt_for(make_events, ["phone-02"]))
        assert query.text == "screen protector"
        assert query.latency_ms == 2.0
