import logging
from typing import Any

from django.core.management.base import CommandParser

from intent_pipeline.corpus.builders import GeneratorRewriter, identity_rewriter
from intent_pipeline.corpus.mixer import dump_corpus
from intent_pipeline.corpus.pipeline import build_corpus
from intent_pipeline.decorators import execution_tracker
from intent_pipeline.generation.factory import build_remote_client
from intent_pipeline.management.base import PipelineCommand
from intent_pipeline.settings.manager import SettingsManager
from intent_pipeline.utils.get_conf import get_corpus_config, get_generator_config

logger = logging.getLogger(__name__)


class Command(PipelineCommand):
    """Build the mixed training corpus from the configured ``corpus.*`` inputs.

    The ``llm_rewrite`` source goes through the remote generator when
    ``generator.kind`` is ``remote``; otherwise rewrites keep the query.

    """

    help = "Build the next-query training corpus"

    def add_command_arguments(self, parser: CommandParser) -> None:
        subparsers = parser.add_subparsers(dest="action", required=True)
        build = subparsers.add_parser("build", help="Build and mix every source.")
        build.add_argument("--out", required=True, help="Corpus JSONL output path.")

    @execution_tracker(logging_level=logging.INFO)
    def run(self, manager: SettingsManager, **options: Any) -> None:
        config = get_corpus_config(manager)
        generator_config = get_generator_config(manager)
        rewriter = identity_rewriter
        if generator_config.kind == "remote":
            rewriter = GeneratorRewriter(build_remote_client(generator_config))

        samples = build_corpus(config, rewriter)
        count = dump_corpus(options["out"], samples)
        self.stdout.write(
            self.style.SUCCESS(f"Wrote {count} sample(s) to {options['out']}")
        )
