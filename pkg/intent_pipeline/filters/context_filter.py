from logging import Filter, LogRecord
from typing import Any, Dict

from intent_pipeline.contextvar import manager


class ContextVarFilter(Filter):
    """Attach the bound pipeline context to every record as ``context``.

    A ``context`` dict passed through ``extra=`` takes precedence over the
    context variables. Records logged outside any pipeline get ``""`` so
    that ``%(context)s`` renders empty.

    """

    def filter(self, record: LogRecord) -> bool:
        bound: Dict[str, Any] = getattr(record, "context", None) or {}
        if not isinstance(bound, dict):
            bound = {"context": bound}
        record.context = manager.get_merged_context(bound) or ""
        return True
