import csv
import json
import sys
from io import StringIO
from pathlib import Path
from typing import Dict

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from intent_pipeline.constants import EXIT_CONFIG_ERROR, EXIT_DATA_ERROR
from intent_pipeline.tests.constants import PYTHON_VERSION, PYTHON_VERSION_REASON
from intent_pipeline.tests.fixtures.files_fixture import TextWriter
from intent_pipeline.utils.files import iter_jsonl

pytestmark = [
    pytest.mark.commands,
    pytest.mark.commands_replay,
    pytest.mark.skipif(sys.version_info < PYTHON_VERSION, reason=PYTHON_VERSION_REASON),
]

JS_ONLY_CONFIG = {
    "drift": {"lambda1": 0.0, "lambda2": 0.0, "lambda3": 1.0},
    "window": {"size": 10},
}


@pytest.fixture
def dataset(write_text_file: TextWriter, tmp_path: Path) -> Dict[str, str]:
    """
    A synthesized shoes-then-phones session with its truth, catalog and a
    JS-only drift config.
    """
    spec = write_text_file(
        "spec.json",
        json.dumps(
            {
                "segments": [
                    {"distribution": {"shoes": 1.0}, "length": 100},
                    {"distribution": {"phones": 1.0}, "length": 100},
                ],
                "seed": 7,
            }
        ),
    )
    sessions = str(tmp_path / "sessions.jsonl")
    call_command("synth", "--spec", spec, "--out", sessions, stdout=StringIO())
    return {
        "sessions": sessions,
        "truth": f"{sessions}.truth.json",
        "catalog": f"{sessions}.catalog.tsv",
        "config": write_text_file("config.json", json.dumps(JS_ONLY_CONFIG)),
    }


class TestReplayCommand:
    """
    Test suite for the `replay` management command.
    """

    def test_csv_report_per_policy(self, dataset: Dict[str, str], tmp_path: Path) -> None:
        """
        Test a CSV report over two policies.

        Asserts:
        -------
            - One row per policy in the given order.
            - The drift policy detects the single shift exactly.
        """
        out = tmp_path / "report.csv"
        stdout = StringIO()
        call_command(
            "replay",
            "--config", dataset["config"],
            "--sessions", dataset["sessions"],
            "--catalog", dataset["catalog"],
            "--ground-truth", dataset["truth"],
            "--policy", "drift",
            "--policy", "every-k=50",
            "--format", "csv",
            "--out", str(out),
            stdout=stdout,
        )  # fmt: skip

        rows = list(csv.DictReader(out.read_text(encoding="utf-8").splitlines()))
        assert [row["policy"] for row in rows] == ["drift", "every-k=50"]
        drift = rows[0]
        assert drift["trigger_count"] == "2"
        assert drift["bootstrap_count"] == "1"
        assert float(drift["precision"]) == 1.0
        assert float(drift["recall"]) == 1.0
        assert rows[1]["trigger_count"] == "4"
        assert "under 2 policies" in stdout.getvalue()

    def test_json_report_and_traces(self, dataset: Dict[str, str], tmp_path: Path) -> None:
        """
        Test a JSON report with a trace dump.

        Asserts:
        -------
            - The header records the seed and the clock.
            - Precision and recall are null without ground truth.
            - One trace line is written per event.
        """
        out = tmp_path / "report.json"
        traces = str(tmp_path / "traces.jsonl")
        call_command(
            "replay",
            "--config", dataset["config"],
            "--sessions", dataset["sessions"],
            "--catalog", dataset["catalog"],
            "--seed", "7",
            "--trace-out", traces,
            "--out", str(out),
            stdout=StringIO(),
        )  # fmt: skip

        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["seed"] == 7
        assert report["clock"] == "simulated"
        entry = report["policies"][0]
        assert entry["policy"] == "drift"
        assert entry["precision"] is None
        assert len(list(iter_jsonl(traces))) == 200

    def test_missing_sessions_file(self, dataset: Dict[str, str], tmp_path: Path) -> None:
        """
        Test an unreadable session file.

        Asserts:
        -------
            - The command exits with 3.
        """
        with pytest.raises(CommandError) as exc_info:
            call_command(
                "replay",
                "--sessions", str(tmp_path / "absent.jsonl"),
                "--catalog", dataset["catalog"],
                "--out", str(tmp_path / "r.json"),
                stdout=StringIO(),
            )  # fmt: skip
        assert exc_info.value.returncode == EXIT_DATA_ERROR

    def test_invalid_utf8_session_line(self, dataset: Dict[str, str], tmp_path: Path) -> None:
        """
        Test a session file with a line that is not UTF-8.

        Asserts:
        -------
            - The command exits with 3 and names the offending line.
        """
        sessions = tmp_path / "broken.jsonl"
        with open(dataset["sessions"], "rb") as infile:
            first = infile.readline()
        sessions.write_bytes(first + b'{"user": "\xff"}\n')

        with pytest.raises(CommandError) as exc_info:
            call_command(
                "replay",
                "--sessions", str(sessions),
                "--catalog", dataset["catalog"],
                "--out", str(tmp_path / "r.json"),
                stdout=StringIO(),
            )  # fmt: skip
        assert exc_info.value.returncode == EXIT_DATA_ERROR
        assert f"{sessions}:2" in str(exc_info.value)

    @pytest.mark.parametrize(
        "config, policy",
        [
            ({"drift": {"tau": 2.0}}, "drift"),
            ({"window": {"policy": "sliding"}}, "drift"),
            ({}, "sometimes"),
        ],
    )
    def test_configuration_errors(
        self,
        dataset: Dict[str, str],
        write_text_file: TextWriter,
        tmp_path: Path,
        config: dict,
        policy: str,
    ) -> None:
        """
        Test invalid settings and policies.

        Asserts:
        -------
            - An out-of-range tau, an unknown window policy and an unknown
              trigger policy all exit with 2.
        """
        path = write_text_file("bad.json", json.dumps(config))
        with pytest.raises(CommandError) as exc_info:
            call_command(
                "replay",
                "--config", path,
                "--sessions", dataset["sessions"],
                "--catalog", dataset["catalog"],
                "--policy", policy,
                "--out", str(tmp_path / "r.json"),
                stdout=StringIO(),
            )  # fmt: skip
        assert exc_info.value.returncode == EXIT_CONFIG_ERROR

    def test_missing_config_file(self, dataset: Dict[str, str], tmp_path: Path) -> None:
        """
        Test ``--config`` pointing nowhere.

        Asserts:
        -------
            - The command exits with 2.
        """
        with pytest.raises(CommandError) as exc_info:
            call_command(
                "replay",
                "--config", str(tmp_path / "absent.toml"),
                "--sessions", dataset["sessions"],
                "--catalog", dataset["catalog"],
                "--out", str(tmp_path / "r.json"),
                stdout=StringIO(),
            )  # fmt: skip
        assert exc_info.value.returncode == EXIT_CONFIG_ERROR
