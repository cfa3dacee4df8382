from typing import Optional

from django.core.exceptions import ImproperlyConfigured


class IntentPipelineError(Exception):
    """Root of every error raised by the intent pipeline."""


class ConfigurationError(IntentPipelineError, ImproperlyConfigured):
    """A configuration value or a loaded pool violates its invariants."""


class NoTemplates(ConfigurationError):
    """No prompt template is applicable to the requested scenario."""


class TemplateOverBudget(ConfigurationError):
    """A bare template does not fit the on-device budget."""


class DataError(IntentPipelineError, ValueError):
    """Input data (events, files, judge output) is unusable."""


class OutOfOrderEvent(DataError):
    """An event is older than the store tolerates; the log is corrupt."""


class EmptyWindow(DataError):
    """An operation needs at least one behavior event."""


class MalformedRecord(DataError):
    """A line of an input file could not be parsed.

    Attributes:
        line_number (int): 1-based line number of the offending record.
        path (Optional[str]): The file the record was read from, if any.

    """

    def __init__(
        self, line_number: int, reason: str, path: Optional[str] = None
    ) -> None:
        self.line_number = line_number
        self.path = path
        location = f"{path}:{line_number}" if path else f"line {line_number}"
        super().__init__(f"{location}: {reason}")


class NotApplicable(DataError):
    """A template was scored for a scenario it does not serve."""


class DuplicateComponent(DataError):
    """A component is already part of the prompt."""


class InsufficientSamples(DataError):
    """A corpus source cannot fill its quota."""

    def __init__(self, source: str, shortfall: int) -> None:
        self.source = source
        self.shortfall = shortfall
        super().__init__(f"source '{source}' is short by {shortfall} sample(s)")


class ParseFailure(DataError):
    """Fewer than three scores could be read from a judge response."""


class RangeViolation(DataError):
    """A judge score falls outside [0, 1]."""


class GenerationFailed(IntentPipelineError):
    """The generation backend failed after exhausting its retries."""
