import json
import logging
import re
from dataclasses import dataclass
from typing import Any, Iterator, Mapping, Optional, Sequence

from intent_pipeline.behavior.events import BehaviorWindow
from intent_pipeline.constants.prompts import EVAL_PROMPT
from intent_pipeline.exceptions import (
    ConfigurationError,
    DataError,
    EmptyWindow,
    ParseFailure,
    RangeViolation,
)
from intent_pipeline.generation.remote import RemoteClient
from intent_pipeline.prompting.engine import render_behavior_sequence

logger = logging.getLogger(__name__)

WEIGHT_TOLERANCE = 1e-9
SCORE_KEYS = ("sem", "logic", "style")

DECIMAL_PATTERN = re.compile(r"[-+]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?")
JSON_OBJECT_PATTERN = re.compile(r"\{[^{}]*\}")


@dataclass(frozen=True)
class JudgeWeights:
    w_sem: float = 1 / 3
    w_logic: float = 1 / 3
    w_style: float = 1 / 3

    def __post_init__(self) -> None:
        weights = (self.w_sem, self.w_logic, self.w_style)
        if any(weight < 0 for weight in weights):
            raise ConfigurationError("judge weights must be >= 0")
        if abs(sum(weights) - 1.0) > WEIGHT_TOLERANCE:
            raise ConfigurationError(f"judge weights must sum to 1, got {sum(weights)}")

    @classmethod
    def parse(cls, text: str) -> "JudgeWeights":
        """Parse ``"0.5,0.25,0.25"`` as used on the command line."""
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 3:
            raise ConfigurationError("judge weights need three comma-separated values")
        try:
            return cls(*(float(part) for part in parts))
        except ValueError as e:
            raise ConfigurationError(f"invalid judge weights {text!r}") from e


@dataclass(frozen=True)
class JudgeScores:
    sem: float
    logic: float
    style: float

    def __post_init__(self) -> None:
        for key in SCORE_KEYS:
            value = getattr(self, key)
            if not 0.0 <= value <= 1.0:
                raise RangeViolation(f"{key} score {value} is outside [0, 1]")

    def total(self, weights: JudgeWeights = JudgeWeights()) -> float:
        return aggregate(self, weights)

    def as_dict(self) -> dict:
        return {key: getattr(self, key) for key in SCORE_KEYS}


def build_eval_prompt(behavior: BehaviorWindow, query: str) -> str:
    if not behavior.events:
        raise EmptyWindow("cannot judge a query without behavior")
    if not query.strip():
        raise DataError("query must be non-empty")
    return EVAL_PROMPT.replace(
        "{behavior_sequence}", render_behavior_sequence(behavior.events)
    ).replace("{query}", query)


def _scores_from_mapping(candidate: Mapping[str, Any]) -> Optional[JudgeScores]:
    values = [candidate.get(key) for key in SCORE_KEYS]
    if not all(
        isinstance(value, (int, float)) and not isinstance(value, bool)
        for value in values
    ):
        return None
    return JudgeScores(*(float(value) for value in values))  # type: ignore[arg-type]


def _json_candidates(raw: str) -> Iterator[Any]:
    try:
        yield json.loads(raw)
    except json.JSONDecodeError:
        pass
    for match in JSON_OBJECT_PATTERN.finditer(raw):
        try:
            yield json.loads(match.group(0))
        except json.JSONDecodeError:
            continue


def parse_scores(raw: str) -> JudgeScores:
    """Read the three sub-scores from a judge response.

    A JSON object with ``sem``, ``logic`` and ``style`` wins; otherwise the
    first three decimal literals are taken in order. Nothing is clamped.

    Raises:
        ParseFailure: If fewer than three numbers can be read.
        RangeViolation: If a score lies outside [0, 1].

    """
    for candidate in _json_candidates(raw):
        if isinstance(candidate, dict):
            scores = _scores_from_mapping(candidate)
            if scores is not None:
                return scores

    numbers = DECIMAL_PATTERN.findall(raw)
    if len(numbers) < 3:
        raise ParseFailure(f"expected three scores, found {len(numbers)} in {raw!r}")
    return JudgeScores(*(float(number) for number in numbers[:3]))


def aggregate(scores: JudgeScores, weights: JudgeWeights) -> float:
    return (
        weights.w_sem * scores.sem
        + weights.w_logic * scores.logic
        + weights.w_style * scores.style
    )


def mean_total(scored: Sequence[JudgeScores], weights: JudgeWeights) -> float:
    if not scored:
        raise DataError("no scored samples to average")
    return sum(aggregate(scores, weights) for scores in scored) / len(scored)


class RemoteJudge:
    """Asks a remote judge model; the response carries a ``scores`` field.

    ``scores`` may be an object with the three keys, a list of three
    numbers, or free text handed to ``parse_scores``.

    """

    def __init__(self, client: RemoteClient) -> None:
        self.client = client

    def score(self, behavior: BehaviorWindow, query: str) -> JudgeScores:
        body = self.client.post({"prompt": build_eval_prompt(behavior, query)})
        scores = body.get("scores")
        if isinstance(scores, dict):
            parsed = _scores_from_mapping(scores)
            if parsed is None:
                raise ParseFailure(f"incomplete scores object {scores!r}")
            return parsed
        if isinstance(scores, list):
            return parse_scores(" ".join(str(value) for value in scores))
        if isinstance(scores, str):
            return parse_scores(scores)
        raise ParseFailure("judge response has no 'scores' field")
