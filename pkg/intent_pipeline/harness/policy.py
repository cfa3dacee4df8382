import re
from dataclasses import dataclass
from typing import Literal, Optional

from intent_pipeline.drift.trigger import DriftConfig
from intent_pipeline.exceptions import ConfigurationError

PolicyKind = Literal["always", "every_k", "drift"]

EVERY_K_PATTERN = re.compile(r"^every[-_]k=(\d+)$")


@dataclass(frozen=True)
class PolicySpec:
    """When the pipeline runs: on every event, on every k-th event, or when
    the drift gate fires."""

    kind: PolicyKind
    k: Optional[int] = None
    drift: Optional[DriftConfig] = None

    def __post_init__(self) -> None:
        if self.kind == "every_k" and (self.k is None or self.k < 1):
            raise ConfigurationError("every-k policy needs k >= 1")
        if self.kind != "every_k" and self.k is not None:
            raise ConfigurationError(f"policy '{self.kind}' takes no k")
        if self.kind == "drift" and self.drift is None:
            raise ConfigurationError("drift policy needs a DriftConfig")
        if self.kind not in ("always", "every_k", "drift"):
            raise ConfigurationError(f"unknown policy '{self.kind}'")

    @classmethod
    def always(cls) -> "PolicySpec":
        return cls("always")

    @classmethod
    def every_k(cls, k: int) -> "PolicySpec":
        return cls("every_k", k=k)

    @classmethod
    def drift_gated(cls, config: DriftConfig) -> "PolicySpec":
        return cls("drift", drift=config)

    @classmethod
    def parse(cls, text: str, drift: Optional[DriftConfig] = None) -> "PolicySpec":
        """Parse ``always``, ``every-k=K`` or ``drift``."""
        value = text.strip().lower()
        if value == "always":
            return cls.always()
        if value in ("drift", "drift_gated", "drift-gated"):
            return cls.drift_gated(drift or DriftConfig())
        match = EVERY_K_PATTERN.match(value)
        if match:
            return cls.every_k(int(match.group(1)))
        raise ConfigurationError(
            f"unknown policy {text!r}; use always, every-k=K or drift"
        )

    @property
    def label(self) -> str:
        if self.kind == "every_k":
            return f"every-k={self.k}"
        return self.kind
