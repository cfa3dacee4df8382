from logging import LogRecord

from intent_pipeline.formatters.base import BaseStructuredFormatter


class FLATFormatter(BaseStructuredFormatter):
    """Single-line ``key='value'`` records for grep-friendly replay logs.

    The bound context is spread into its own keys (``user='u1'``) rather
    than printed as a dict.

    """

    def format(self, record: LogRecord) -> str:
        parts = []
        for specifier in self.specifiers:
            value = self._get_field_value(record, specifier)
            if specifier == "context" and isinstance(value, dict):
                parts.extend(f"{key}='{item}'" for key, item in value.items())
            elif value not in (None, ""):
                parts.append(f"{specifier}='{value}'")

        if record.exc_info:
            parts.append(f"exception='{self.formatException(record.exc_info)}'")
        return " ".join(parts)
