"""
Scenario harness: honest elections and the attack demonstrations.
"""

from pathlib import Path
from typing import Callable, Dict, Optional

from schemas import ScenarioKindEnum, ScenarioReportType
from .harness import ElectionHarness, HarnessSettingsType, voter_ids
from .honest import run_honest_election
from .clash import run_clash_attack
from .cross_voting import run_cross_voting
from .stuffing import StuffingCellSpecType, default_cells, run_ballot_stuffing_matrix
from .privacy import run_everlasting_privacy_demo
from .loader import ScenarioDefinitionType, load_definitions, resolve_definition


def _honest(definition: ScenarioDefinitionType, artifact_dir: Optional[Path]) -> ScenarioReportType:
    return run_honest_election(definition.settings, artifact_dir)


def _stuffing(definition: ScenarioDefinitionType, artifact_dir: Optional[Path]) -> ScenarioReportType:
    return run_ballot_stuffing_matrix(definition.settings, definition.cells or None)


SCENARIO_RUNNERS: Dict[ScenarioKindEnum, Callable[[ScenarioDefinitionType, Optional[Path]], ScenarioReportType]] = {
    ScenarioKindEnum.HONEST_ELECTION: _honest,
    ScenarioKindEnum.CLASH_ATTACK: lambda d, _: run_clash_attack(d.settings),
    ScenarioKindEnum.CROSS_VOTING: lambda d, _: run_cross_voting(d.settings),
    ScenarioKindEnum.BALLOT_STUFFING: _stuffing,
    ScenarioKindEnum.EVERLASTING_PRIVACY: lambda d, _: run_everlasting_privacy_demo(d.settings),
}


def run_scenario(definition: ScenarioDefinitionType, artifact_dir: Optional[Path] = None) -> ScenarioReportType:
    return SCENARIO_RUNNERS[definition.kind](definition, artifact_dir)


__all__ = [
    "ElectionHarness",
    "HarnessSettingsType",
    "voter_ids",
    "run_honest_election",
    "run_clash_attack",
    "run_cross_voting",
    "run_ballot_stuffing_matrix",
    "run_everlasting_privacy_demo",
    "StuffingCellSpecType",
    "default_cells",
    "ScenarioDefinitionType",
    "load_definitions",
    "resolve_definition",
    "SCENARIO_RUNNERS",
    "run_scenario",
]
