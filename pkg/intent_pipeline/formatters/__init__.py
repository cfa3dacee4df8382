from .flat_formatter import FLATFormatter
from .json_formatter import JSONFormatter
