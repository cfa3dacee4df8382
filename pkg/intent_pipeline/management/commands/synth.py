from typing import Any

from django.core.management.base import CommandParser

from intent_pipeline.harness.sessions import (
    SyntheticStreamSpec,
    dump_ground_truth,
    dump_sessions,
    synth_dataset,
)
from intent_pipeline.management.base import PipelineCommand
from intent_pipeline.settings.manager import SettingsManager


class Command(PipelineCommand):
    """Synthesize piecewise-stationary sessions with known shift points.

    Writes the sessions to ``--out``, the ground truth to
    ``<out>.truth.json`` and the item catalog to ``<out>.catalog.tsv``.

    """

    help = "Generate a labeled synthetic session stream"

    def add_command_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--spec", required=True, help="Stream spec JSON file.")
        parser.add_argument("--out", required=True, help="Session JSONL output path.")
        parser.add_argument(
            "--seed", type=int, default=None, help="Overrides the seed of the stream spec file."
        )

    def run(self, manager: SettingsManager, **options: Any) -> None:
        spec = SyntheticStreamSpec.from_file(options["spec"])
        if options["seed"] is not None:
            spec = spec.with_seed(options["seed"])

        sessions, truth, catalog = synth_dataset(spec)
        out = options["out"]
        count = dump_sessions(out, sessions)
        dump_ground_truth(f"{out}.truth.json", truth)
        catalog.to_tsv(f"{out}.catalog.tsv")

        self.stdout.write(
            self.style.SUCCESS(
                f"Wrote {count} event(s) for {len(sessions)} user(s) to {out}"
            )
        )
