import sys
from pathlib import Path
from typing import Any

import pytest

from intent_pipeline.exceptions import ConfigurationError, MalformedRecord
from intent_pipeline.tests.constants import PYTHON_VERSION, PYTHON_VERSION_REASON
from intent_pipeline.tests.fixtures.files_fixture import TextWriter
from intent_pipeline.utils.files import (
    flatten_settings,
    iter_jsonl,
    iter_tsv,
    load_config_file,
    write_jsonl,
)

pytestmark = [
    pytest.mark.utils,
    pytest.mark.utils_files,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]


class TestRecordFiles:
    """
    Test suite for the JSONL and TSV helpers.
    """

    def test_iter_jsonl_skips_blank_lines(self, write_text_file: TextWriter) -> None:
        """
        Test reading JSONL.

        Asserts:
        -------
            - Blank lines are skipped and line numbers stay 1-based.
        """
        path = write_text_file("a.jsonl", '{"a": 1}\n\n{"a": 2}\n')
        assert list(iter_jsonl(path)) == [(1, {"a": 1}), (3, {"a": 2})]

    @pytest.mark.parametrize("content", ['{"a": 1}\n[1, 2]\n', '{"a": 1}\n{oops\n'])
    def test_iter_jsonl_bad_line(self, write_text_file: TextWriter, content: str) -> None:
        """
        Test malformed JSONL.

        Asserts:
        -------
            - A non-object or invalid line raises `MalformedRecord` at line 2.
        """
        path = write_text_file("a.jsonl", content)
        with pytest.raises(MalformedRecord) as exc_info:
            list(iter_jsonl(path))
        assert exc_info.value.line_number == 2

    def test_iter_tsv(self, write_text_file: TextWriter) -> None:
        """
        Test reading TSV rows.

        Asserts:
        -------
            - Comments and blank lines are skipped and fields are stripped.
            - A short row raises `MalformedRecord`.
        """
        path = write_text_file("a.tsv", "# item\ttag\nshoe-01 \tshoes\n\nbook-01\n")
        rows = iter_tsv(path, min_fields=2)
        assert next(rows) == (2, ["shoe-01", "shoes"])
        with pytest.raises(MalformedRecord) as exc_info:
            next(rows)
        assert exc_info.value.line_number == 4

    @pytest.mark.parametrize(
        "reader, content",
        [
            (iter_jsonl, b'{"a": 1}\n{"a": "\xff"}\n'),
            (lambda path: iter_tsv(path, min_fields=2), b"shoe-01\tshoes\nbook-\xfe\tbooks\n"),
        ],
        ids=["jsonl", "tsv"],
    )
    def test_invalid_utf8_line(self, tmp_path: Path, reader: Any, content: bytes) -> None:
        """
        Test a line that is not valid UTF-8.

        Asserts:
        -------
            - The first line is read and the second raises `MalformedRecord`
              carrying line 2 and the path.
        """
        path = tmp_path / "bad.txt"
        path.write_bytes(content)
        rows = reader(str(path))
        assert next(rows)[0] == 1
        with pytest.raises(MalformedRecord) as exc_info:
            next(rows)
        assert exc_info.value.line_number == 2
        assert exc_info.value.path == str(path)

    def test_write_jsonl_sorts_keys(self, tmp_path: Path) -> None:
        """
        Test writing JSONL.

        Asserts:
        -------
            - Parent directories are created and keys are sorted.
        """
        path = tmp_path / "out" / "a.jsonl"
        assert write_jsonl(str(path), [{"b": 1, "a": "é"}]) == 1
        assert path.read_text(encoding="utf-8") == '{"a": "é", "b": 1}\n'


class TestConfigFiles:
    """
    Test suite for config file loading.
    """

    def test_flatten_settings(self) -> None:
        """
        Test flattening nested settings.

        Asserts:
        -------
            - Nested keys are dotted and dotted keys pass through.
        """
        assert flatten_settings(
            {"drift": {"tau": 0.7}, "corpus.ratio": {"human": 0.1}, "prompt.beta": 2}
        ) == {"drift.tau": 0.7, "corpus.ratio.human": 0.1, "prompt.beta": 2}

    def test_toml_and_json(self, write_text_file: TextWriter) -> None:
        """
        Test both config formats.

        Asserts:
        -------
            - TOML tables and JSON objects flatten to the same keys.
        """
        toml = write_text_file("c.toml", "[drift]\ntau = 0.7\n\n[harness]\nclock = 'wall'\n")
        json_path = write_text_file("c.json", '{"drift": {"tau": 0.7}, "harness.clock": "wall"}')
        expected = {"drift.tau": 0.7, "harness.clock": "wall"}
        assert load_config_file(toml) == expected
        assert load_config_file(json_path) == expected

    @pytest.mark.parametrize(
        "name, content",
        [("c.yaml", "drift: 1"), ("c.toml", "[drift\n"), ("c.json", "{"), ("c.json", "[1]")],
    )
    def test_invalid_files(self, write_text_file: TextWriter, name: str, content: str) -> None:
        """
        Test unusable config files.

        Asserts:
        -------
            - Unsupported extensions, invalid content and non-object roots raise
              `ConfigurationError`.
        """
        with pytest.raises(ConfigurationError):
            load_config_file(write_text_file(name, content))

    def test_missing_file(self, tmp_path: Path) -> None:
        """
        Test a missing config file.

        Asserts:
        -------
            - `ConfigurationError` is raised.
        """
        with pytest.raises(ConfigurationError):
            load_config_file(str(tmp_path / "absent.toml"))
