import ast
import json
import re
from logging import LogRecord
from typing import Any, Dict

from intent_pipeline.formatters.base import BaseStructuredFormatter


class JSONFormatter(BaseStructuredFormatter):
    """One compact JSON object per record.

    ``key=value`` pairs in the message (``user=u1 fired=True``) are lifted
    into top-level fields, and the bound pipeline context is emitted as a
    nested ``context`` object.

    """

    key_value_pattern = re.compile(
        r"(?P<key>\w+)=(?P<value>\{.*?\}|\[.*?\]|\(.*?\)|\S+)"
    )

    def format(self, record: LogRecord) -> str:
        data: Dict[str, Any] = {
            specifier: self._handle_complex_value(
                self._get_field_value(record, specifier)
            )
            for specifier in self.specifiers
            if specifier != "message"
        }

        message = record.getMessage()
        pairs = {
            match.group("key"): self._convert_value(match.group("value"))
            for match in self.key_value_pattern.finditer(message)
        }
        if pairs:
            data.update(pairs)
            message = self.key_value_pattern.sub("", message)
        data["message"] = " ".join(message.split())

        self._add_exception(record, data)
        return json.dumps(data, sort_keys=False, ensure_ascii=False)

    def _convert_value(self, value: str) -> Any:
        if value.lower() in ("true", "false"):
            return value.lower() == "true"
        try:
            return ast.literal_eval(value)
        except (ValueError, SyntaxError):
            return value
