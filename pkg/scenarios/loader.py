"""
Scenario definitions are data: one JSON file per definition in
``config.SCENARIO_DIR``. New adversary combinations need no code changes.
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, ValidationError

import config
from errors import UnknownScenarioError
from schemas import ScenarioKindEnum
from .harness import HarnessSettingsType
from .stuffing import StuffingCellSpecType

logger = logging.getLogger(__name__)


class ScenarioDefinitionType(BaseModel):
    name: str
    kind: ScenarioKindEnum
    description: str = ""
    settings: HarnessSettingsType = HarnessSettingsType()
    cells: List[StuffingCellSpecType] = []


def load_definitions(directory: Optional[Path] = None) -> Dict[str, ScenarioDefinitionType]:
    """
    Read every ``*.json`` definition; invalid files are skipped with a warning.

    Returns:
        Definitions by name, in file-name order
    """
    directory = Path(directory or config.SCENARIO_DIR)
    definitions: Dict[str, ScenarioDefinitionType] = {}
    for path in sorted(directory.glob("*.json")):
        try:
            with open(path, "r", encoding="utf-8") as f:
                definition = ScenarioDefinitionType(**json.load(f))
        except (OSError, json.JSONDecodeError, ValidationError) as e:
            logger.warning("Skipping scenario definition %s: %s", path.name, e)
            continue
        definitions[definition.name] = definition
    return definitions


def resolve_definition(name: str, directory: Optional[Path] = None) -> ScenarioDefinitionType:
    """
    Look a scenario up by definition name, then by kind.

    A bare kind with no definition file runs with default settings.

    Raises:
        UnknownScenarioError: neither a definition nor a kind
    """
    definitions = load_definitions(directory)
    if name in definitions:
        return definitions[name]
    for definition in definitions.values():
        if definition.kind.value == name:
            return definition
    try:
        kind = ScenarioKindEnum(name)
    except ValueError:
        known = sorted(set(definitions) | {k.value for k in ScenarioKindEnum})
        raise UnknownScenarioError(f"unknown scenario '{name}'; known: {', '.join(known)}") from None
    return ScenarioDefinitionType(name=kind.value, kind=kind)
