"""
Clash attack: two voters hold the same credentials and both audit one ballot.

The registrar gives the second voter exactly the first voter's (s, t, rho).
Only the first voter's ballot is cast; a colluding server points the second
voter's audit at it and the second voter's client shows the same payload.
With identity commitments the second voter's clash check fails. With plain
anonymous credentials there is nothing to check and the audit passes.
"""

from typing import Dict, Optional, Tuple

from schemas import (
    AuditReportType,
    DeliveryModeEnum,
    ScenarioKindEnum,
    ScenarioReportType,
    ServerBehaviorEnum,
    VerdictEnum,
)
from .harness import ElectionHarness, HarnessSettingsType

AUDIT_ORDERS = ("first-voter-first", "second-voter-first")


def run_clash_round(
    settings: HarnessSettingsType, baseline: bool, order: str
) -> Tuple[AuditReportType, AuditReportType, int]:
    """
    One clash attempt.

    Returns:
        Tuple of (first voter's audit, second voter's audit, registry size)
    """
    harness = ElectionHarness(settings.model_copy(update={
        "voters": 2,
        "mode": DeliveryModeEnum.DIRECT,
        "baseline": baseline,
        "adversarial_registrar": True,
        "server_behavior": ServerBehaviorEnum.COLLUDING,
    }))
    first, second = harness.vids
    harness.register(before_delivery=lambda registrar: registrar.misbehave_duplicate_credentials(first, second))
    harness.publish()

    harness.cast_one(first)
    harness.server.redirect_audit(second, harness.clients[first].reference)
    shown = harness.payloads[first]

    auditors = (first, second) if order == AUDIT_ORDERS[0] else (second, first)
    reports: Dict[str, AuditReportType] = {vid: harness.audit(vid, shown) for vid in auditors}
    return reports[first], reports[second], len(harness.registry)


def run_clash_attack(settings: Optional[HarnessSettingsType] = None) -> ScenarioReportType:
    settings = settings or HarnessSettingsType()
    report = ScenarioReportType(
        scenario=ScenarioKindEnum.CLASH_ATTACK.value,
        seed=settings.seed,
        parameters={"profile": settings.profile.value},
    )

    for baseline in (False, True):
        variant = "baseline" if baseline else "augmented"
        for order in AUDIT_ORDERS:
            first, second, records = run_clash_round(settings, baseline, order)
            prefix = f"{variant}.{order}"
            detected = second.verdict == VerdictEnum.FAIL
            report.add_fact(f"{prefix}.registry_records", records)
            report.add_fact(f"{prefix}.first_voter_verdict", first.verdict.value)
            report.add_fact(f"{prefix}.second_voter_clash_check", "skipped" if second.clash_check is None else second.clash_check)
            report.add_fact(f"{prefix}.second_voter_verdict", second.verdict.value)
            report.add_fact(f"{prefix}.detection", detected)

            report.expect(f"{prefix}.first_voter_passes", VerdictEnum.PASS, first.verdict)
            report.expect(f"{prefix}.detection", not baseline, detected)
    return report
