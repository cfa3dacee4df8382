import sys
from typing import Any, Dict
from unittest.mock import patch

import pytest
from django.conf import settings

from intent_pipeline.settings.checks import check_pipeline_settings, run_config_checks
from intent_pipeline.settings.manager import SettingsManager
from intent_pipeline.tests.constants import PYTHON_VERSION, PYTHON_VERSION_REASON

pytestmark = [
    pytest.mark.settings,
    pytest.mark.settings_checks,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]


def error_ids(overrides: Dict[str, Any]) -> list:
    return [error.id for error in run_config_checks(SettingsManager(overrides))]


class TestChecks:
    """
    Test suite for the settings checks.
    """

    def test_defaults_are_valid(self, mock_settings: SettingsManager) -> None:
        """
        Test valid settings.

        Asserts:
        -------
            - Neither the test settings nor the patched settings report an error.
        """
        assert run_config_checks(SettingsManager()) == []
        assert run_config_checks(mock_settings) == []

    def test_system_check_uses_module_manager(self) -> None:
        """
        Test the registered Django system check.

        Asserts:
        -------
            - The check returns a list of errors for the module level manager.
        """
        assert check_pipeline_settings(None) == []

    @pytest.mark.parametrize(
        "overrides, expected_id",
        [
            ({"window.policy": "sliding"}, "intent_pipeline.E001_window.policy"),
            ({"drift.lambda1": 0.5}, "intent_pipeline.E007_drift.lambda"),
            ({"drift.lambda1": -0.1}, "intent_pipeline.E006_drift.lambda"),
            ({"drift.tau": 1.5}, "intent_pipeline.E005_drift.tau"),
            ({"drift.min_window": 0}, "intent_pipeline.E003_drift.min_window"),
            ({"prompt.beta": 0}, "intent_pipeline.E002_prompt.beta"),
            ({"prompt.templates_path": "/no/such/file"}, "intent_pipeline.E012_prompt.templates_path"),
            ({"prompt.scenarios": ["a", "a"]}, "intent_pipeline.E014_prompt.scenarios"),
            ({"generator.kind": "remote"}, "intent_pipeline.E013_generator.endpoint"),
            ({"judge.endpoint": "agent.test"}, "intent_pipeline.E013_judge.endpoint"),
            ({"corpus.ratio.human": 0.5}, "intent_pipeline.E007_corpus.ratio"),
            ({"harness.clock": "sundial"}, "intent_pipeline.E001_harness.clock"),
            ({"harness.percentile_ranks": [0]}, "intent_pipeline.E015_harness.percentile_ranks"),
            ({"logging.format": "%(bogus)s"}, "intent_pipeline.E009_logging.format"),
            ({"logging.date_format": "%Q"}, "intent_pipeline.E011_logging.date_format"),
            ({"logging.auto_initialization": "yes"}, "intent_pipeline.E004_logging.auto_initialization"),
        ],
    )
    def test_invalid_settings(self, overrides: Dict[str, Any], expected_id: str) -> None:
        """
        Test one invalid setting at a time.

        Asserts:
        -------
            - Exactly the matching error id is reported.
        """
        assert error_ids(overrides) == [expected_id]

    def test_errors_accumulate(self) -> None:
        """
        Test several invalid settings.

        Asserts:
        -------
            - One error per invalid setting is returned.
        """
        with patch.object(settings, "INTENT_PIPELINE", {"drift": {"tau": -1}}):
            ids = error_ids({"harness.match_window": -2})
        assert ids == [
            "intent_pipeline.E005_drift.tau",
            "intent_pipeline.E003_harness.match_window",
        ]
