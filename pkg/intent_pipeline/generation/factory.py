import logging
from typing import Optional

from intent_pipeline.behavior.tags import TagCatalog
from intent_pipeline.exceptions import ConfigurationError
from intent_pipeline.generation.mock import MockGenerator, load_complement_table
from intent_pipeline.generation.query import GeneratorConfig, QueryGenerator
from intent_pipeline.generation.remote import RemoteClient, RemoteGenerator

logger = logging.getLogger(__name__)


def build_remote_client(
    config: GeneratorConfig, endpoint: Optional[str] = None
) -> RemoteClient:
    """Client for ``endpoint`` (default: the generator endpoint) using the
    generator's timeout, retry and in-flight limits."""
    url = endpoint or config.endpoint
    if not url:
        raise ConfigurationError("a remote endpoint is required")
    return RemoteClient(
        url,
        timeout_ms=config.timeout_ms,
        max_retries=config.max_retries,
        max_in_flight=config.max_in_flight,
    )


def build_generator(config: GeneratorConfig, catalog: TagCatalog) -> QueryGenerator:
    if config.kind == "remote":
        logger.info("Using remote generator at %s", config.endpoint)
        return RemoteGenerator(build_remote_client(config))

    table = (
        load_complement_table(config.complement_table)
        if config.complement_table
        else {}
    )
    return MockGenerator(catalog, table, config.mock_latency_per_token_ms)
