import sys
from unittest.mock import patch

import pytest
from django.conf import settings

from intent_pipeline.settings.manager import SettingsManager
from intent_pipeline.tests.constants import PYTHON_VERSION, PYTHON_VERSION_REASON

pytestmark = [
    pytest.mark.settings,
    pytest.mark.settings_manager,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]


class TestSettingsManager:
    """
    Test suite for `SettingsManager`.
    """

    def test_nested_and_dotted_keys(self, mock_settings: SettingsManager) -> None:
        """
        Test reading the patched ``INTENT_PIPELINE`` setting.

        Asserts:
        -------
            - Nested sections and dotted keys are both read.
            - Keys left out keep their defaults.
        """
        assert mock_settings.window_policy == "time"
        assert mock_settings.window_span_ms == 120_000
        assert mock_settings.window_size == 50
        assert mock_settings.drift_lambdas == [0.0, 0.5, 0.5]
        assert mock_settings.drift_tau == 0.6
        assert mock_settings.prompt_beta == 2.0
        assert mock_settings.judge_weights == [0.5, 0.25, 0.25]
        assert mock_settings.corpus_ratios["human"] == 0.05
        assert mock_settings.corpus_ratios["behavior_driven"] == 0.60
        assert mock_settings.percentile_ranks == [50, 99]
        assert mock_settings.log_format_type == "JSON"

    def test_overrides_win(self) -> None:
        """
        Test layering a config file over the Django setting.

        Asserts:
        -------
            - Override keys replace the setting and the rest is kept.
        """
        with patch.object(settings, "INTENT_PIPELINE", {"drift": {"tau": 0.5, "min_window": 3}}):
            manager = SettingsManager({"drift.tau": 0.9})
        assert manager.drift_tau == 0.9
        assert manager.drift_min_window == 3

    def test_corpus_window_defaults_to_window_size(self) -> None:
        """
        Test the derived corpus window size.

        Asserts:
        -------
            - ``corpus.window_size`` follows ``window.size`` unless set.
        """
        with patch.object(settings, "INTENT_PIPELINE", {"window": {"size": 12}}):
            assert SettingsManager().corpus_window_size == 12
            assert SettingsManager({"corpus.window_size": 4}).corpus_window_size == 4

    def test_non_dict_setting(self) -> None:
        """
        Test a malformed ``INTENT_PIPELINE`` setting.

        Asserts:
        -------
            - `ValueError` is raised.
        """
        with patch.object(settings, "INTENT_PIPELINE", ["drift.tau"]):
            with pytest.raises(ValueError):
                SettingsManager()
