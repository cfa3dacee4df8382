import json
import logging
import os
from dataclasses import dataclass
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from intent_pipeline.constants.config_types import ComponentRecord, TemplateRecord
from intent_pipeline.constants.prompts import DEFAULT_COMPONENTS, DEFAULT_TEMPLATES
from intent_pipeline.exceptions import ConfigurationError
from intent_pipeline.prompting.models import (
    PromptComponent,
    PromptTemplate,
    ScenarioContext,
)
from intent_pipeline.prompting.scorer import FeatureBasis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PromptPools:
    """Template pool and component set, loaded once and shared read-only."""

    templates: Tuple[PromptTemplate, ...]
    components: Tuple[PromptComponent, ...]

    def __post_init__(self) -> None:
        for kind, ids in (
            ("template", [t.id for t in self.templates]),
            ("component", [c.id for c in self.components]),
        ):
            duplicates = sorted({i for i in ids if ids.count(i) > 1})
            if duplicates:
                raise ConfigurationError(f"duplicate {kind} ids: {duplicates}")

    def templates_for(self, scenario: ScenarioContext) -> List[PromptTemplate]:
        return [t for t in self.templates if t.applies_to(scenario)]

    def check_dimensions(self, basis: FeatureBasis) -> None:
        for template in self.templates:
            basis.check(f"template '{template.id}'", template.affinity)
        for component in self.components:
            basis.check(f"component '{component.id}'", component.affinity)


def _read_pool(path: str) -> List[Any]:
    if not os.path.isfile(path):
        raise ConfigurationError(f"Pool file {path} does not exist.")
    try:
        with open(path, encoding="utf-8") as infile:
            records = json.load(infile)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ConfigurationError(f"Pool file {path} is not valid JSON: {e}") from e
    if not isinstance(records, list):
        raise ConfigurationError(f"Pool file {path} must hold a JSON list.")
    return records


def _affinity(owner: str, raw: Any) -> Tuple[float, ...]:
    if not isinstance(raw, list) or not raw:
        raise ConfigurationError(f"{owner} needs a non-empty 'affinity' list")
    try:
        return tuple(float(weight) for weight in raw)
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"{owner} has a non-numeric affinity: {e}") from e


def template_from_record(record: TemplateRecord) -> PromptTemplate:
    try:
        template_id = record["id"]
        body = record["body"]
    except KeyError as e:
        raise ConfigurationError(f"template record is missing {e}") from e
    return PromptTemplate(
        id=template_id,
        body=body,
        affinity=_affinity(f"template '{template_id}'", record.get("affinity")),
        scenario_ids=frozenset(record.get("scenario_ids") or ()),
    )


def component_from_record(record: ComponentRecord) -> PromptComponent:
    try:
        component_id = record["id"]
        text = record["text"]
    except KeyError as e:
        raise ConfigurationError(f"component record is missing {e}") from e
    affinity = _affinity(f"component '{component_id}'", record.get("affinity"))
    if "token_cost" in record:
        # the constructor rejects a declared cost that disagrees with the tokenizer
        return PromptComponent(
            id=component_id,
            text=text,
            affinity=affinity,
            token_cost=int(record["token_cost"]),  # type: ignore[typeddict-item]
        )
    return PromptComponent.create(component_id, text, affinity)


def load_templates(path: str) -> Tuple[PromptTemplate, ...]:
    templates = tuple(template_from_record(r) for r in _read_pool(path))
    logger.info("Loaded %d template(s) from %s", len(templates), path)
    return templates


def load_components(path: str) -> Tuple[PromptComponent, ...]:
    components = tuple(component_from_record(r) for r in _read_pool(path))
    logger.info("Loaded %d component(s) from %s", len(components), path)
    return components


def default_pools(
    templates: Optional[Iterable[TemplateRecord]] = None,
    components: Optional[Iterable[ComponentRecord]] = None,
) -> PromptPools:
    return PromptPools(
        templates=tuple(
            template_from_record(r) for r in (templates or DEFAULT_TEMPLATES)
        ),
        components=tuple(
            component_from_record(r) for r in (components or DEFAULT_COMPONENTS)
        ),
    )


def load_pools(
    templates_path: Optional[str] = None, components_path: Optional[str] = None
) -> PromptPools:
    """Load pools from JSON files, falling back to the built-in pools."""
    defaults = default_pools()
    return PromptPools(
        templates=load_templates(templates_path) if templates_path else defaults.templates,
        components=(
            load_components(components_path) if components_path else defaults.components
        ),
    )


def dump_pool(path: str, entries: Sequence[Any]) -> None:
    """Write templates or components in the pool file format."""
    records = []
    for entry in entries:
        record = {"id": entry.id, "affinity": list(entry.affinity)}
        if isinstance(entry, PromptTemplate):
            record.update(scenario_ids=sorted(entry.scenario_ids), body=entry.body)
        else:
            record.update(text=entry.text, token_cost=entry.token_cost)
        records.append(record)
    with open(path, "w", encoding="utf-8") as outfile:
        json.dump(records, outfile, indent=2, sort_keys=True)
