import re
from logging import Formatter, LogRecord
from typing import Any, Dict, List, Optional, Union


class BaseStructuredFormatter(Formatter):
    """Base for formatters that emit the fields named in a ``%(...)s``
    format string as structured data instead of interpolated text.

    Attributes:
        specifiers (List[str]): Field names found in the format string, in order.

    """

    def __init__(
        self, fmt: Optional[str] = None, datefmt: Optional[str] = None
    ) -> None:
        super().__init__(fmt, datefmt)
        self.specifiers: List[str] = re.findall(r"%\((.*?)\)", fmt) if fmt else []

    def _get_field_value(self, record: LogRecord, specifier: str) -> Optional[Any]:
        if specifier == "message":
            return record.getMessage()
        if specifier == "asctime":
            return self.formatTime(record, self.datefmt)
        return getattr(record, specifier, None)

    def _handle_complex_value(
        self, value: Any
    ) -> Union[str, int, float, bool, None, Dict[str, Any], List[Any]]:
        """Make ``value`` JSON friendly; scalars that JSON knows pass through."""
        if isinstance(value, dict):
            return {str(k): self._handle_complex_value(v) for k, v in value.items()}
        if isinstance(value, (list, tuple, set, frozenset)):
            return [self._handle_complex_value(v) for v in value]
        if value is None or isinstance(value, (bool, int, float)):
            return value
        return str(value)

    def _add_exception(self, record: LogRecord, data: Dict[str, Any]) -> None:
        if record.exc_info:
            data["exception"] = self.formatException(record.exc_info)
