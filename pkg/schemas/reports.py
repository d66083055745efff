import json
from typing import Dict, List, Optional

from pydantic import BaseModel

from .enums import CompromiseEnum, DeliveryModeEnum, VerdictEnum, ViolationKindEnum


class AuditReportType(BaseModel):
    """
    Second-device audit outcome, one field per check.

    ``clash_check`` is None when the check is not performed (plain anonymous
    credentials have no reference opening to check).
    """

    vid: str
    clash_check: Optional[bool]
    plaintext_choice: Optional[int]
    receipt_valid: bool
    fingerprint_match: bool
    verdict: VerdictEnum

    @property
    def plaintext_found(self) -> bool:
        return self.plaintext_choice is not None

    def to_text(self) -> str:
        clash = "skipped" if self.clash_check is None else str(self.clash_check).lower()
        choice = "no-match" if self.plaintext_choice is None else str(self.plaintext_choice)
        return "\n".join([
            f"vid={self.vid}",
            f"clash_check={clash}",
            f"plaintext={choice}",
            f"receipt_valid={str(self.receipt_valid).lower()}",
            f"fingerprint_match={str(self.fingerprint_match).lower()}",
            f"verdict={self.verdict.value}",
        ])


class ViolationType(BaseModel):
    entry: int  # ballot sequence number, or line number for parse errors
    kind: ViolationKindEnum
    detail: str = ""


class VerificationReportType(BaseModel):
    entries_checked: int
    registry_records: int
    violations: List[ViolationType] = []

    @property
    def clean(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        return json.dumps(
            {
                "entries_checked": self.entries_checked,
                "registry_records": self.registry_records,
                "clean": self.clean,
                "violations": [v.model_dump(mode="json") for v in self.violations],
            },
            indent=2,
        )


class LeakFindingType(BaseModel):
    artifact: str
    kind: str  # "vid", "vid-hash" or "opening"
    label: str


class LeakReportType(BaseModel):
    findings: List[LeakFindingType] = []
    scalar_scan_performed: bool

    @property
    def clean(self) -> bool:
        return not self.findings


class AssertionType(BaseModel):
    name: str
    expected: str
    observed: str

    @property
    def holds(self) -> bool:
        return self.expected == self.observed


class ScenarioReportType(BaseModel):
    """
    Report of one scenario run. Contains only seed-determined values, so the
    rendered text is byte-identical across runs with the same seed.
    """

    scenario: str
    seed: int
    parameters: Dict[str, str] = {}
    facts: List[List[str]] = []
    assertions: List[AssertionType] = []

    @property
    def passed(self) -> bool:
        return all(a.holds for a in self.assertions)

    def add_fact(self, key: str, value) -> None:
        self.facts.append([key, str(value).lower() if isinstance(value, bool) else str(value)])

    def expect(self, name: str, expected, observed) -> AssertionType:
        assertion = AssertionType(name=name, expected=_render(expected), observed=_render(observed))
        self.assertions.append(assertion)
        return assertion

    def render(self) -> str:
        lines = [f"scenario={self.scenario}", f"seed={self.seed}"]
        lines += [f"param.{k}={v}" for k, v in sorted(self.parameters.items())]
        lines += [f"{k}={v}" for k, v in self.facts]
        for a in self.assertions:
            status = "ok" if a.holds else "FAILED"
            lines.append(f"assert.{a.name}={status} expected={a.expected} observed={a.observed}")
        lines.append(f"result={'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


class ElectionReportType(ScenarioReportType):
    tally: Dict[int, int] = {}
    audits: List[AuditReportType] = []


class EquivocationReportType(ScenarioReportType):
    openings: Dict[str, int] = {}


class StuffingCellType(BaseModel):
    mode: DeliveryModeEnum
    two_factor: bool
    compromised: CompromiseEnum
    success: bool
    stage: str  # where the attack stopped, or "cast"


class MatrixReportType(ScenarioReportType):
    cells: List[StuffingCellType] = []


def _render(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)
