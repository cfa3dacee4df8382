from .factory import build_generator, build_remote_client
from .mock import MockGenerator, extract_item_ids, load_complement_table
from .query import (
    MAX_QUERY_TOKENS,
    GeneratedQuery,
    GeneratorConfig,
    QueryGenerator,
    generate,
    normalize_query,
)
from .remote import RemoteClient, RemoteGenerator
