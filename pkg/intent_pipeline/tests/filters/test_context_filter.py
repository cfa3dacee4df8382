import sys
from logging import LogRecord

import pytest

from intent_pipeline.contextvar import manager
from intent_pipeline.filters import ContextVarFilter
from intent_pipeline.tests.constants import PYTHON_VERSION, PYTHON_VERSION_REASON

pytestmark = [
    pytest.mark.filters,
    pytest.mark.filters_context_filter,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]


class TestContextVarFilter:
    """
    Test suite for `ContextVarFilter`.
    """

    def test_outside_any_context(self, debug_log_record: LogRecord) -> None:
        """
        Test a record logged outside the pipeline.

        Asserts:
        -------
            - The record passes with an empty ``context``.
        """
        assert ContextVarFilter().filter(debug_log_record) is True
        assert debug_log_record.context == ""

    def test_attaches_bound_context(self, debug_log_record: LogRecord) -> None:
        """
        Test a record logged inside a replay scope.

        Asserts:
        -------
            - The bound user and policy are attached.
        """
        with manager.scoped_context(user="u1", policy="drift"):
            ContextVarFilter().filter(debug_log_record)
        assert debug_log_record.context == {"policy": "drift", "user": "u1"}

    def test_extra_context_wins(self, debug_log_record: LogRecord) -> None:
        """
        Test a ``context`` passed through ``extra``.

        Asserts:
        -------
            - Explicit keys override bound ones and a non-dict value is wrapped.
        """
        debug_log_record.context = {"user": "u2"}
        with manager.scoped_context(user="u1", stage="prompt"):
            ContextVarFilter().filter(debug_log_record)
        assert debug_log_record.context == {"stage": "prompt", "user": "u2"}

        debug_log_record.context = "batch-7"
        ContextVarFilter().filter(debug_log_record)
        assert debug_log_record.context == {"context": "batch-7"}
