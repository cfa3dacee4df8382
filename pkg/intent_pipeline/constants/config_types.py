from typing import Dict, List, Literal, TypedDict, Union

WindowPolicyKind = Literal["count", "time"]
GeneratorKind = Literal["mock", "remote"]
ClockKind = Literal["simulated", "wall"]
ReportFormat = Literal["json", "csv"]
LogFormatType = Literal["NORMAL", "JSON", "FLAT"]
LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
SampleSource = Literal["behavior_driven", "co_purchase", "llm_rewrite", "human"]

# Flat dotted keys, e.g. {"drift.tau": 0.8}
PipelineSettings = Dict[str, object]
ScenarioIds = List[str]
Affinity = List[float]
SettingValue = Union[int, float, str, bool, List[str], None]


class CorpusRatios(TypedDict):
    behavior_driven: float
    co_purchase: float
    llm_rewrite: float
    human: float


class TemplateRecord(TypedDict, total=False):
    id: str
    scenario_ids: ScenarioIds
    body: str
    affinity: Affinity


class ComponentRecord(TypedDict, total=False):
    id: str
    text: str
    affinity: Affinity
